#include "lcah/cli/interpreter.hpp"

#include <functional>
#include <map>

#include "lcah/oracle.hpp"

namespace lcah::cli {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render_ints(const IntMatrix &m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j)
      out += (j ? ", " : "") + m(i, j).get_str();
    out += "]";
  }
  return out + "]";
}

std::string render_hmor(const HeartMorphism &m, const SymbolTable &t) {
  return "hmor (" + render(m.upper, t) + ", " + render(m.lower, t) + ")";
}

std::string describe(const Operand &op) {
  return "operand at column " + std::to_string(op.column);
}

[[noreturn]] void usage(const std::string &msg) { fail(ErrorKind::Usage, msg); }

} // namespace

std::string render(const Value &v, const SymbolTable &t) {
  struct {
    const SymbolTable &t;
    std::string operator()(const ElcaGroup &g) const { return render(g); }
    std::string operator()(const ElcaMorphism &f) const { return render(f, t); }
    std::string operator()(const HeartObject &o) const {
      return "heart " + render(o.differential(), t);
    }
    std::string operator()(const HeartMorphism &m) const { return render_hmor(m, t); }
    std::string operator()(const PgaGroup &p) const { return "pga " + render(p.iota(), t); }
    std::string operator()(const PgaMorphism &f) const {
      return "pmor " + render_ints(f.discrete_map().matrix()) + " : " +
             f.source().group().to_string() + " -> " + f.target().group().to_string();
    }
    std::string operator()(const Roof &r) const {
      return "roof apex " + render(r.apex.differential(), t) + ", left " +
             render_hmor(r.left, t) + ", right " + render_hmor(r.right, t);
    }
  } visitor{t};
  return std::visit(visitor, v);
}

int exit_code(const Error &e) { return e.is_internal() ? 2 : 1; }

namespace {

class Runner {
public:
  Runner(Session &s, const Options &o, const Statement &st) : s_(s), opt_(o), st_(st) {}

  void arity(std::size_t lo, std::size_t hi) const {
    std::size_t n = st_.operands.size();
    if (n < lo || n > hi)
      usage("'" + st_.command + "' takes " +
            (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
            " operand" + (hi == 1 ? "" : "s") + ", got " + std::to_string(n));
  }

  const Operand &op(std::size_t i) const { return st_.operands.at(i); }

  Value resolve(const Operand &o) const {
    if (auto *n = std::get_if<Operand::Name>(&o.value)) {
      const Value *v = s_.find(n->name);
      if (!v)
        usage("unbound name '" + n->name + "' at column " + std::to_string(o.column));
      return *v;
    }
    if (auto *g = std::get_if<ElcaGroup>(&o.value))
      return *g;
    if (auto *f = std::get_if<ElcaMorphism>(&o.value))
      return *f;
    if (auto *num = std::get_if<Operand::Number>(&o.value); num && num->text == "0")
      return ElcaGroup();
    if (std::holds_alternative<RawMatrix>(o.value))
      usage(describe(o) + ": a matrix needs ': source -> target'");
    usage(describe(o) + ": a number is not a value");
  }

  template <class T> T as(const Operand &o, const char *what) const {
    Value v = resolve(o);
    if (auto *x = std::get_if<T>(&v))
      return *x;
    if constexpr (std::is_same_v<T, HeartObject>)
      if (auto *f = std::get_if<ElcaMorphism>(&v))
        return HeartObject(*f);
    usage(describe(o) + ": expected " + what + ", got " + kind_name(v));
  }

  ElcaMorphism morphism(std::size_t i) const { return as<ElcaMorphism>(op(i), "a morphism"); }
  HeartObject heart(std::size_t i) const { return as<HeartObject>(op(i), "a heart object"); }
  PgaGroup pga(std::size_t i) const { return as<PgaGroup>(op(i), "a pga group"); }

  double number(std::size_t i, const char *what) const {
    auto *n = std::get_if<Operand::Number>(&op(i).value);
    if (!n)
      usage(describe(op(i)) + ": expected " + what);
    try {
      return std::stod(n->text);
    } catch (const std::exception &) {
      usage(describe(op(i)) + ": " + what + " out of range");
    }
  }

  std::string name(std::size_t i, const char *what) const {
    auto *n = std::get_if<Operand::Name>(&op(i).value);
    if (!n)
      usage(describe(op(i)) + ": expected " + what);
    return n->name;
  }

  const std::string &store(const HeartObject &from, const HeartObject &to,
                           const BicartesianCertificate &c, Outcome &out) {
    if (opt_.check_certificates) {
      check_certificate(c, from, to);
      out.details.push_back("certificate checked");
    }
    const std::string &id = s_.add_certificate(from, to, c);
    out.details.insert(out.details.begin(),
                       "certificate " + id + " (" + std::to_string(c.steps.size()) +
                           (c.steps.size() == 1 ? " square)" : " squares)"));
    out.data["certificate"] = id;
    out.data["squares"] = c.steps.size();
    return id;
  }

  Outcome run();

private:
  Session &s_;
  const Options &opt_;
  const Statement &st_;
};

Outcome Runner::run() {
  Outcome out;
  const std::string &cmd = st_.command;
  const SymbolTable &t = s_.symbols;

  if (cmd == "symbol") {
    arity(1, 2);
    std::string n = name(0, "a symbol name");
    std::optional<double> shadow;
    if (st_.operands.size() == 2)
      shadow = number(1, "a shadow value");
    s_.symbols.declare(n, shadow);
    out.details.push_back("symbol " + n);
    out.data["symbol"] = n;
    return out;
  }
  if (cmd == "value" || cmd == "show") {
    arity(1, 1);
    out.value = resolve(op(0));
    return out;
  }
  if (cmd == "heart") {
    arity(1, 1);
    out.value = HeartObject(morphism(0));
    return out;
  }
  if (cmd == "hmor") {
    arity(4, 4);
    out.value = make_heart_morphism(heart(0), heart(1), morphism(2), morphism(3));
    return out;
  }
  if (cmd == "pga") {
    arity(1, 1);
    ElcaMorphism f = morphism(0);
    if (!f.source().is_discrete())
      usage("the source of a pga embedding must be discrete, got " + f.source().to_string());
    out.value = PgaGroup(f.source().discrete_part(), f.target(), f);
    return out;
  }
  if (cmd == "pmor") {
    arity(3, 3);
    PgaGroup p = pga(0), q = pga(1);
    auto *m = std::get_if<RawMatrix>(&op(2).value);
    if (!m)
      usage(describe(op(2)) + ": expected an integer matrix");
    std::vector<std::vector<Int>> rows;
    for (const auto &row : m->rows) {
      std::vector<Int> r;
      for (const Scalar &x : row) {
        if (!x.is_integer())
          usage("pga morphism entries must be integers, got " + render(x, t));
        r.push_back(x.to_integer());
      }
      rows.push_back(std::move(r));
    }
    if (rows.size() != q.group().generators())
      fail(ErrorKind::ShapeMismatch, "matrix needs one row per generator of the target");
    IntMatrix im = IntMatrix::from_rows(rows, p.group().generators());
    if (im.cols() != p.group().generators())
      fail(ErrorKind::ShapeMismatch, "matrix needs one column per generator of the source");
    out.value = PgaMorphism(p, q, FgAbMorphism(p.group(), q.group(), im));
    return out;
  }
  if (cmd == "roof") {
    arity(2, 2);
    out.value = make_roof(as<HeartMorphism>(op(0), "a heart morphism"),
                          as<HeartMorphism>(op(1), "a heart morphism"));
    return out;
  }
  if (cmd == "kernel" || cmd == "closure") {
    arity(1, 1);
    Subobject k = cmd == "kernel" ? kernel(morphism(0)) : closure_of_image(morphism(0));
    out.value = k.embedding;
    out.details.push_back("group " + render(k.group));
    out.data["group"] = io::to_json(k.group);
    return out;
  }
  if (cmd == "coker") {
    arity(1, 1);
    Quotient q = cokernel(morphism(0));
    out.value = q.projection;
    out.details.push_back("group " + render(q.group));
    out.data["group"] = io::to_json(q.group);
    return out;
  }
  if (cmd == "classify") {
    arity(1, 1);
    MorphismClassification c = classify_morphism(morphism(0));
    out.details.push_back("monic " + yes_no(c.monic) + ", epic " + yes_no(c.epic) +
                          ", admissible " + yes_no(c.admissible) + ", admissible monic " +
                          yes_no(c.admissible_monic) + ", admissible epic " +
                          yes_no(c.admissible_epic));
    out.data = {{"monic", c.monic},
                {"epic", c.epic},
                {"admissible", c.admissible},
                {"admissible_monic", c.admissible_monic},
                {"admissible_epic", c.admissible_epic}};
    return out;
  }
  if (cmd == "dual") {
    arity(1, 1);
    Value v = resolve(op(0));
    if (auto *g = std::get_if<ElcaGroup>(&v))
      out.value = pontryagin_dual(*g);
    else if (auto *f = std::get_if<ElcaMorphism>(&v))
      out.value = pontryagin_dual(*f);
    else if (auto *h = std::get_if<HeartObject>(&v))
      out.value = heart_dual(*h);
    else
      usage(describe(op(0)) + ": dual takes a group, morphism or heart object" +
            (std::holds_alternative<PgaGroup>(v) ? "; use weakdual for pga groups" : ""));
    return out;
  }
  if (cmd == "pullback") {
    arity(2, 2);
    Pullback p = pullback(morphism(0), morphism(1));
    out.value = p.group;
    out.details.push_back("to first " + render(p.to_a, t));
    out.details.push_back("to second " + render(p.to_b, t));
    return out;
  }
  if (cmd == "bicartesian?") {
    arity(4, 4);
    SquareData sq(morphism(0), morphism(1), morphism(2), morphism(3));
    out.answer = is_bicartesian(sq);
    return out;
  }
  if (cmd == "ghost?") {
    arity(1, 1);
    out.answer = heart(0).is_ghost();
    return out;
  }
  if (cmd == "decompose") {
    arity(1, 1);
    Decomposition d = decompose(heart(0));
    out.value = d.torsion;
    out.details.push_back("cotorsion " + render(d.cotorsion));
    out.details.push_back("gluing " + render(d.gluing, t));
    out.data["cotorsion"] = io::to_json(d.cotorsion);
    return out;
  }
  if (cmd == "normalize") {
    arity(1, 1);
    HeartObject x = heart(0);
    DcForm d = normalize_dc(x);
    out.value = d.object;
    store(x, d.object, d.certificate, out);
    return out;
  }
  if (cmd == "theta") {
    arity(1, 1);
    Value v = resolve(op(0));
    if (auto *p = std::get_if<PgaGroup>(&v))
      out.value = theta(*p);
    else if (auto *f = std::get_if<PgaMorphism>(&v))
      out.value = theta(*f);
    else
      usage(describe(op(0)) + ": theta takes a pga group or pga morphism");
    return out;
  }
  if (cmd == "thetainv") {
    arity(1, 1);
    HeartObject x = heart(0);
    PgaGroup p = theta_inverse(x);
    out.value = p;
    // Only a ghost is recovered from its group; otherwise nothing to certify.
    if (x.is_ghost())
      store(theta(p), x, theta_round_trip(x), out);
    else
      out.details.push_back("no certificate: object is not a ghost");
    return out;
  }
  if (cmd == "completion") {
    arity(1, 1);
    Completion c = completion(pga(0));
    out.value = c.group;
    out.details.push_back("dense " + render(c.dense_map, t));
    out.details.push_back("embedding " + render(c.embedding, t));
    return out;
  }
  if (cmd == "precompact?") {
    arity(1, 1);
    out.answer = classify_pga(pga(0)).precompact;
    return out;
  }
  if (cmd == "isogeny?") {
    arity(1, 1);
    auto w = is_lattice_isogeny(as<PgaMorphism>(op(0), "a pga morphism"));
    out.answer = w.has_value();
    if (w) {
      if (opt_.check_certificates)
        check_witness(*w);
      io::json j = io::to_json(*w, t);
      std::string id = content_id("witness", j);
      out.details.push_back("witness " + id);
      for (const auto &l : w->links)
        out.details.push_back(std::string(link_kind_name(l.kind)) + ", " +
                              (l.kind == LinkKind::AdmissibleEpic ? "kernel " : "cokernel ") +
                              l.defect.to_string());
      out.data["witness"] = id;
      out.data["links"] = j;
    }
    return out;
  }
  if (cmd == "weakdual") {
    arity(1, 1);
    out.value = weak_dual_dc(pga(0));
    return out;
  }
  if (cmd == "roofzero?") {
    arity(1, 1);
    out.answer = roof_is_zero(as<Roof>(op(0), "a roof"));
    return out;
  }
  if (cmd == "roofeq?") {
    arity(2, 2);
    out.answer = roof_equal(as<Roof>(op(0), "a roof"), as<Roof>(op(1), "a roof"));
    return out;
  }
  if (cmd == "check") {
    arity(2, 4);
    std::string which = name(0, "an oracle name (brute, shadow, dualdual)");
    OracleCase c;
    if (which == "brute") {
      arity(2, 2);
      c = brute_finite_check(morphism(1), "brute");
    } else if (which == "shadow") {
      ShadowOptions so;
      so.seed = opt_.seed;
      if (st_.operands.size() > 2)
        so.samples = static_cast<std::size_t>(number(2, "a sample count"));
      if (st_.operands.size() > 3)
        so.eps = number(3, "an eps value");
      ElcaMorphism f = morphism(1);
      c = shadow_density_check(f, closure_of_image(f), t, so, "shadow");
    } else if (which == "dualdual") {
      arity(2, 3);
      std::size_t trials =
          st_.operands.size() > 2 ? static_cast<std::size_t>(number(2, "a trial count")) : 20;
      RandomSource rng(opt_.seed, &t);
      c = double_dual_check(as<ElcaGroup>(op(1), "a group"), trials, rng, "dualdual");
    } else {
      usage("unknown oracle '" + which + "' (expected brute, shadow or dualdual)");
    }
    out.answer = c.pass;
    out.details.push_back(c.witness.dump());
    out.data = report_to_json({c});
    return out;
  }
  usage("unknown command '" + cmd + "'");
}

} // namespace

std::optional<Outcome> Interpreter::execute(const std::string &line) {
  std::optional<Statement> st = parse_statement(line, s_.symbols);
  if (!st)
    return std::nullopt;
  Outcome out = run(*st);
  if (st->bind) {
    if (!out.value)
      usage("'" + st->command + "' has no value to bind");
    s_.bind(*st->bind, *out.value);
    out.bind = st->bind;
  }
  s_.history.push_back(line);
  return out;
}

Outcome Interpreter::run(const Statement &st) { return Runner(s_, opt_, st).run(); }

std::string Interpreter::format(const std::string &line, const Outcome &o) const {
  const SymbolTable &t = s_.symbols;
  if (opt_.json) {
    io::json j;
    j["input"] = line;
    j["bind"] = o.bind ? io::json(*o.bind) : io::json(nullptr);
    if (o.value) {
      j["kind"] = kind_name(*o.value);
      j["value"] = value_to_json(*o.value, t);
    }
    if (o.answer)
      j["answer"] = *o.answer;
    j["details"] = o.data;
    return j.dump() + "\n";
  }
  std::string s;
  if (o.answer)
    s += *o.answer ? "true\n" : "false\n";
  if (o.value)
    s += (o.bind ? *o.bind + " = " : std::string()) + render(*o.value, t) + "\n";
  std::string indent = s.empty() ? "" : "  ";
  for (const auto &d : o.details)
    s += indent + d + "\n";
  return s;
}

std::string Interpreter::format_error(const std::string &line, const Error &e) const {
  std::string msg = e.what();
  if (auto *nm = dynamic_cast<const NotMonicError *>(&e))
    msg += "; kernel embedding " + render(nm->kernel().embedding, s_.symbols);
  if (opt_.json) {
    io::json j;
    j["input"] = line;
    j["error"] = {{"kind", error_kind_name(e.kind())}, {"message", msg}};
    return j.dump() + "\n";
  }
  return std::string("error: ") + error_kind_name(e.kind()) + ": " + msg + "\n";
}

} // namespace lcah::cli
