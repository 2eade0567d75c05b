// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lcah/cli/interpreter.hpp"
#include "lcah/oracle.hpp"

#include "../support/corpus.hpp"
#include "../support/fuzz.hpp"
#include "../support/snf_oracle.hpp"

using namespace lcah;
using namespace lcah::corpus;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Counts failing cases and keeps the first few messages.
class Tally {
public:
  void check(bool ok, const std::string &what) {
    ++cases_;
    if (ok)
      return;
    if (++failures_ <= 3)
      notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  template <class F> void guard(const std::string &what, F &&body) {
    try {
      body();
    } catch (const std::exception &e) {
      check(false, what + ": " + e.what());
    }
  }
  int failures() const { return failures_; }
  int cases() const { return cases_; }
  Result result(const std::string &extra = {}) const {
    std::string d = std::to_string(cases_ - failures_) + "/" + std::to_string(cases_) + " checks";
    if (!extra.empty())
      d += ", " + extra;
    if (!notes_.empty())
      d += " [" + notes_ + "]";
    return {failures_ == 0, d};
  }

private:
  int cases_ = 0, failures_ = 0;
  std::string notes_;
};

std::string id(const char *prefix, int i) { return std::string(prefix) + "-" + std::to_string(i); }

Result smith_soundness() {
  RandomSource rng(101);
  std::vector<IntMatrix> corpus;
  for (int i = 0; i < 500; ++i)
    corpus.push_back(rng.int_matrix(rng.uniform(1, 6), rng.uniform(1, 6), 20));
  Tally t;
  std::vector<SmithForm> forms;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const IntMatrix &m = corpus[i];
    SmithForm f = smith_normal_form(m);
    bool ok = f.U * m * f.V == f.D && abs(determinant(f.U)) == 1 &&
              abs(determinant(f.V)) == 1;
    for (std::size_t r = 0; r < f.D.rows(); ++r)
      for (std::size_t c = 0; c < f.D.cols(); ++c)
        if (r != c && f.D(r, c) != 0)
          ok = false;
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t k = 0; k < n; ++k) {
      if (f.D(k, k) < 0)
        ok = false;
      if (k + 1 < n && f.D(k + 1, k + 1) != 0 &&
          (f.D(k, k) == 0 || f.D(k + 1, k + 1) % f.D(k, k) != 0))
        ok = false;
    }
    t.check(ok, id("snf", static_cast<int>(i)));
    forms.push_back(std::move(f));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // Diagonal against determinantal divisors, outside the timed region.
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::vector<Int> expected = oracle_support::invariant_factors(corpus[i]);
    bool ok = forms[i].rank == expected.size();
    for (std::size_t k = 0; ok && k < expected.size(); ++k)
      ok = forms[i].D(k, k) == expected[k];
    t.check(ok, id("divisors", static_cast<int>(i)));
  }
  t.check(secs < 5.0, "time budget");
  std::ostringstream extra;
  extra.precision(3);
  extra << secs << " s";
  return t.result(extra.str());
}

Result finite_oracle() {
  RandomSource rng(202);
  Tally t;
  for (int i = 0; i < 300; ++i) {
    FgAbGroup s = finite_group(rng, 512), y = finite_group(rng, 512);
    FgAbMorphism f = rng.fg_morphism(s, y);
    t.guard(id("finite", i), [&] {
      OracleCase a = brute_finite_check(f, id("fgab", i));
      OracleCase b = brute_finite_check(ElcaMorphism::from_fgab(f), id("elca", i));
      t.check(a.pass, a.id + " " + a.witness.dump());
      t.check(b.pass, b.id + " " + b.witness.dump());
    });
  }
  return t.result();
}

Result duality() {
  Symbols s;
  RandomSource rng(303, &s.table);
  RandomBounds b;
  Tally t;
  for (int i = 0; i < 200; ++i) {
    ElcaGroup g = rng.group(b);
    t.check(pontryagin_dual(pontryagin_dual(g)) == g, id("group", i));
  }
  for (int i = 0; i < 200; ++i) {
    ElcaMorphism f = rng.morphism(rng.group(b), rng.group(b), b);
    t.guard(id("morphism", i), [&] {
      t.check(pontryagin_dual(pontryagin_dual(f)) == f, id("double-dual", i));
      Quotient q = cokernel(f);
      t.check(q.group == pontryagin_dual(kernel(pontryagin_dual(f)).group), id("coker", i));
      t.check(compose(q.projection, f).is_zero() && classify_morphism(q.projection).admissible_epic,
              id("coker-projection", i));
    });
  }
  return t.result();
}

Result rotation_object() {
  Tally t;
  t.guard("interpreter", [&] {
    cli::Session session;
    cli::Interpreter in(session, cli::Options{});
    in.execute("symbol a 1.4142135623730951");
    in.execute("mor x : Z -> T = [[a]]");
    in.execute("let X = heart x");
    auto out = in.execute("ghost? X");
    t.check(out && out->answer == true, "ghost? X");
    try {
      in.execute("heart [[2/5]] : Z -> T");
      t.check(false, "2/5 accepted");
    } catch (const NotMonicError &e) {
      t.check(e.kernel().group == ElcaGroup::Z() &&
                  e.kernel().embedding == mor(ElcaGroup::Z(), ElcaGroup::Z(), {{rational(5)}}),
              "kernel of the 2/5 rotation");
    }
  });
  t.guard("roof", [&] {
    Symbols s;
    Scalar inv = Scalar::symbol(s.table, 1, -1);
    HeartObject apex(mor(ElcaGroup::Z(2), ElcaGroup::R(), {{s.a, rational(1)}}));
    HeartObject xa(mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}}));
    HeartObject xinv(mor(ElcaGroup::Z(), ElcaGroup::T(), {{inv}}));
    HeartMorphism left = make_heart_morphism(
        apex, xa, mor(ElcaGroup::Z(2), ElcaGroup::Z(), {{rational(1), rational(0)}}),
        mor(ElcaGroup::R(), ElcaGroup::T(), {{rational(1)}}));
    HeartMorphism right = make_heart_morphism(
        apex, xinv, mor(ElcaGroup::Z(2), ElcaGroup::Z(), {{rational(0), rational(1)}}),
        mor(ElcaGroup::R(), ElcaGroup::T(), {{inv}}));
    t.check(is_bicartesian(as_square(left)), "left leg");
    t.check(is_bicartesian(as_square(right)), "right leg");
    Roof r = make_roof(left, right);
    check_roof(r);
    DcForm once = normalize_dc(xa);
    DcForm twice = normalize_dc(once.object);
    t.check(once.object == xa && twice.object == once.object, "normalize idempotent");
  });
  return t.result();
}

Result theta_round_trips() {
  Symbols s;
  RandomSource rng(505, &s.table);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    HeartObject o = dc_ghost(rng);
    t.guard(id("dc", i), [&] {
      BicartesianCertificate c = theta_round_trip(o);
      bool ok = !c.steps.empty();
      for (const CertificateStep &st : c.steps)
        ok = ok && is_bicartesian(st.square) && vertical_maps_match(st.square, false);
      t.check(ok, id("dc", i));
    });
  }
  for (int i = 0; i < 100; ++i) {
    PgaGroup p = precompact_pga(rng);
    t.guard(id("pga", i), [&] {
      LatticeIsogenyWitness w = theta_inverse_round_trip(p);
      check_witness(w);
      t.check(!w.links.empty() && w.links.back().map.target() == p, id("pga", i));
    });
  }
  return t.result();
}

Result completion_exactness() {
  Symbols s;
  RandomSource rng(606, &s.table);
  Tally t;
  std::vector<PgaExactCase> cases = exact_sequences(rng, s, 24);
  for (std::size_t i = 0; i < cases.size(); ++i)
    t.guard(id("sequence", static_cast<int>(i)), [&] {
      t.check(completion_is_exact(cases[i].sequence), id("sequence", static_cast<int>(i)));
    });
  t.check(cases.size() >= 20, "corpus size");
  return t.result();
}

Result faithfulness() {
  Symbols s;
  RandomSource rng(707, &s.table);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    HeartObject o = nonzero_object(rng);
    t.guard(id("identity", i), [&] { t.check(!roof_is_zero(identity_roof(o)), id("identity", i)); });
  }
  for (int i = 0; i < 50; ++i)
    t.guard(id("null", i), [&] { t.check(roof_is_zero(homotopy_zero_roof(rng, s)), id("null", i)); });
  return t.result();
}

Result torsion_pair() {
  Symbols s;
  RandomSource rng(808, &s.table);
  RandomBounds b;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    HeartObject o = heart_object(rng);
    t.guard(id("decompose", i), [&] {
      Decomposition d = decompose(o);
      t.check(d.torsion.is_ghost() && d.cotorsion == cokernel(o.differential()).group &&
                  compose(d.gluing, d.torsion.differential()) == o.differential(),
              id("decompose", i));
    });
  }
  for (int i = 0; i < 50; ++i) {
    HeartObject g = ghost_object(rng);
    ElcaGroup y = rng.group(b);
    t.guard(id("hom", i), [&] {
      t.check(maps_to_torsion_free(g, y).solutions.is_trivial(), id("hom", i));
    });
  }
  return t.result();
}

Result shadow_audit() {
  Symbols s;
  RandomSource rng(909, &s.table);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    ElcaMorphism f = rotation(rng, s);
    t.guard(id("shadow", i), [&] {
      ShadowOptions opt;
      opt.samples = 10000;
      opt.eps = 1e-3;
      opt.seed = static_cast<std::uint64_t>(i);
      OracleCase c = shadow_density_check(f, closure_of_image(f), s.table, opt, id("shadow", i));
      t.check(c.pass, c.id + " " + c.witness.dump());
    });
  }
  return t.result();
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Feeds the golden script through an in-process interpreter, as --batch does.
std::string run_script(bool json, cli::Session &session) {
  cli::Options opt;
  opt.json = json;
  cli::Interpreter in(session, opt);
  std::string out;
  std::ifstream script(LCAH_GOLDEN_SCRIPT);
  std::string line;
  while (std::getline(script, line))
    if (auto o = in.execute(line))
      out += in.format(line, *o);
  return out;
}

Result cli_suite() {
  Tally t;
  std::vector<std::string> lines = fuzz::golden_lines(LCAH_GOLDEN_SCRIPT);
  t.guard("golden", [&] {
    cli::Session text_session, json_session;
    t.check(run_script(false, text_session) == slurp(LCAH_GOLDEN_TEXT), "golden text");
    t.check(run_script(true, json_session) == slurp(LCAH_GOLDEN_JSON), "golden json");
    std::string saved = text_session.serialize();
    t.check(cli::Session::parse(saved).serialize() == saved, "session byte stability");
  });

  cli::Session session;
  cli::Interpreter in(session, cli::Options{});
  in.execute("symbol a 1.4142135623730951");
  in.execute("symbol b 0.7320508075688772");
  const SymbolTable &tab = session.symbols;
  fuzz::Generator gen(20240611);
  RandomSource rng(99, &tab);
  RandomBounds b;
  int inputs = 0;
  for (int i = 0; i < 2500; ++i, ++inputs) {
    std::string text = gen.group();
    t.guard("group " + text, [&] {
      ElcaGroup g = cli::parse_group(text);
      t.check(cli::parse_group(cli::render(g)) == g, "group " + text);
    });
  }
  for (int i = 0; i < 2500; ++i, ++inputs) {
    std::string text = gen.scalar();
    t.guard("scalar " + text, [&] {
      Scalar x = cli::parse_scalar(text, tab);
      t.check(cli::parse_scalar(cli::render(x, tab), tab) == x, "scalar " + text);
    });
  }
  for (int i = 0; i < 2500; ++i, ++inputs) {
    ElcaMorphism m = rng.morphism(rng.group(b), rng.group(b), b);
    std::string text = cli::render(m, tab);
    t.guard("morphism " + text, [&] {
      ElcaMorphism back = cli::parse_morphism(text, tab);
      t.check(back == m && cli::render(back, tab) == text, "morphism " + text);
    });
  }
  for (int i = 0; i < 2500; ++i, ++inputs) {
    std::string text = gen.mutate(lines[gen.pick(0, static_cast<long>(lines.size()) - 1)]);
    bool ok = true;
    try {
      auto st = cli::parse_statement(text, tab);
      (void)st;
    } catch (const Error &e) {
      ok = !e.is_internal();
    } catch (...) {
      ok = false;
    }
    t.check(ok, "statement " + text);
  }
  return t.result(std::to_string(inputs) + " fuzz inputs");
}

} // namespace

int main() {
  const std::vector<std::pair<int, std::function<Result()>>> criteria = {
      {1, smith_soundness}, {2, finite_oracle},     {3, duality},
      {4, rotation_object}, {5, theta_round_trips}, {6, completion_exactness},
      {7, faithfulness},    {8, torsion_pair},      {9, shadow_audit},
      {10, cli_suite},
  };
  int failed = 0;
  for (const auto &[n, run] : criteria) {
    Result r;
    try {
      r = run();
    } catch (const std::exception &e) {
      r = {false, std::string("aborted: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << "criterion " << n << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
