#include "lcah/json_io.hpp"

namespace lcah::io {

namespace {

[[noreturn]] void bad(const std::string &what) {
  fail(ErrorKind::Session, "malformed " + what);
}

const json &field(const json &j, const char *key, const char *what) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string(what) + ": missing '" + key + "'");
  return j.at(key);
}

Rat rat_from(const json &j) {
  if (!j.is_string())
    bad("rational");
  try {
    Rat q(j.get<std::string>());
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument &) {
    bad("rational '" + j.get<std::string>() + "'");
  }
}

json int_matrix(const IntMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

IntMatrix int_matrix_from(const json &j, std::size_t cols) {
  if (!j.is_array())
    bad("integer matrix");
  std::vector<std::vector<Int>> rows;
  for (const auto &row : j) {
    if (!row.is_array())
      bad("integer matrix row");
    std::vector<Int> r;
    for (const auto &x : row) {
      if (!x.is_string())
        bad("integer entry");
      try {
        r.emplace_back(x.get<std::string>());
      } catch (const std::invalid_argument &) {
        bad("integer entry '" + x.get<std::string>() + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows, cols);
}

std::vector<Int> ints_from(const json &j) {
  if (!j.is_array())
    bad("torsion list");
  std::vector<Int> out;
  for (const auto &x : j) {
    if (!x.is_string())
      bad("torsion entry");
    out.emplace_back(x.get<std::string>());
  }
  return out;
}

json ints(const std::vector<Int> &v) {
  json out = json::array();
  for (const Int &x : v)
    out.push_back(x.get_str());
  return out;
}

std::size_t size_from(const json &j, const char *key, const char *what) {
  const json &v = field(j, key, what);
  if (!v.is_number_unsigned())
    bad(std::string(what) + ": '" + key + "' is not a count");
  return v.get<std::size_t>();
}

} // namespace

json to_json(const SymbolTable &t) {
  json out = json::array();
  for (std::uint32_t i = 1; i < t.size(); ++i) {
    json s = {{"name", t.name(i)}};
    s["shadow"] = t.shadow(i) ? json(*t.shadow(i)) : json(nullptr);
    out.push_back(s);
  }
  return out;
}

SymbolTable symbols_from_json(const json &j) {
  if (!j.is_array())
    bad("symbol table");
  SymbolTable t;
  for (const auto &s : j) {
    const json &name = field(s, "name", "symbol");
    if (!name.is_string())
      bad("symbol name");
    std::optional<double> shadow;
    if (s.contains("shadow") && !s["shadow"].is_null()) {
      if (!s["shadow"].is_number())
        bad("symbol shadow");
      shadow = s["shadow"].get<double>();
    }
    t.declare(name.get<std::string>(), shadow);
  }
  return t;
}

json to_json(const Scalar &s, const SymbolTable &t) {
  json out = json::object();
  for (const auto &[m, c] : s.terms())
    out[monomial_key(m, t)] = c.get_str();
  return out;
}

Scalar scalar_from_json(const json &j, const SymbolTable &t) {
  if (!j.is_object())
    bad("scalar");
  Scalar s;
  for (auto it = j.begin(); it != j.end(); ++it)
    s += Scalar::monomial(t.id(), parse_monomial_key(it.key(), t), rat_from(it.value()));
  return s;
}

json to_json(const FgAbGroup &g) {
  return {{"rank", g.rank()}, {"torsion", ints(g.torsion())}};
}

FgAbGroup fg_group_from_json(const json &j) {
  FgAbGroup g(size_from(j, "rank", "group"), ints_from(field(j, "torsion", "group")));
  return g;
}

json to_json(const FgAbMorphism &f) {
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"matrix", int_matrix(f.matrix())}};
}

FgAbMorphism fg_morphism_from_json(const json &j) {
  FgAbGroup s = fg_group_from_json(field(j, "source", "map"));
  FgAbGroup t = fg_group_from_json(field(j, "target", "map"));
  return FgAbMorphism(s, t, int_matrix_from(field(j, "matrix", "map"), s.generators()));
}

json to_json(const ElcaGroup &g) {
  return {{"R", g.a()}, {"Z", g.b()}, {"T", g.c()}, {"F", ints(g.torsion())}};
}

ElcaGroup group_from_json(const json &j) {
  return ElcaGroup(size_from(j, "R", "group"), size_from(j, "Z", "group"),
                   size_from(j, "T", "group"), ints_from(field(j, "F", "group")));
}

json to_json(const ElcaMorphism &f, const SymbolTable &t) {
  ScalarMatrix m = f.full();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(to_json(m(i, k), t));
    rows.push_back(row);
  }
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"matrix", rows}};
}

ElcaMorphism morphism_from_json(const json &j, const SymbolTable &t) {
  ElcaGroup s = group_from_json(field(j, "source", "morphism"));
  ElcaGroup y = group_from_json(field(j, "target", "morphism"));
  const json &rows = field(j, "matrix", "morphism");
  if (!rows.is_array())
    bad("morphism matrix");
  std::vector<std::vector<Scalar>> m;
  for (const auto &row : rows) {
    if (!row.is_array())
      bad("morphism row");
    std::vector<Scalar> r;
    for (const auto &x : row)
      r.push_back(scalar_from_json(x, t));
    m.push_back(std::move(r));
  }
  return ElcaMorphism::from_full(s, y, ScalarMatrix::from_rows(m, s.coordinates()));
}

json to_json(const HeartObject &o, const SymbolTable &t) {
  return {{"differential", to_json(o.differential(), t)}};
}

HeartObject heart_from_json(const json &j, const SymbolTable &t) {
  return HeartObject(morphism_from_json(field(j, "differential", "heart object"), t));
}

json to_json(const HeartMorphism &m, const SymbolTable &t) {
  return {{"source", to_json(m.source, t)},
          {"target", to_json(m.target, t)},
          {"upper", to_json(m.upper, t)},
          {"lower", to_json(m.lower, t)}};
}

HeartMorphism heart_morphism_from_json(const json &j, const SymbolTable &t) {
  const char *w = "heart morphism";
  return make_heart_morphism(heart_from_json(field(j, "source", w), t),
                             heart_from_json(field(j, "target", w), t),
                             morphism_from_json(field(j, "upper", w), t),
                             morphism_from_json(field(j, "lower", w), t));
}

json to_json(const SquareData &s, const SymbolTable &t) {
  return {{"top", to_json(s.top(), t)},
          {"bottom", to_json(s.bottom(), t)},
          {"left", to_json(s.left(), t)},
          {"right", to_json(s.right(), t)}};
}

SquareData square_from_json(const json &j, const SymbolTable &t) {
  const char *w = "square";
  return SquareData(morphism_from_json(field(j, "top", w), t),
                    morphism_from_json(field(j, "bottom", w), t),
                    morphism_from_json(field(j, "left", w), t),
                    morphism_from_json(field(j, "right", w), t));
}

json to_json(const BicartesianCertificate &c, const SymbolTable &t) {
  json out = json::array();
  for (const auto &s : c.steps)
    out.push_back({{"direction", direction_name(s.direction)},
                   {"square", to_json(s.square, t)}});
  return out;
}

BicartesianCertificate certificate_from_json(const json &j, const SymbolTable &t) {
  if (!j.is_array())
    bad("certificate");
  BicartesianCertificate c;
  for (const auto &s : j) {
    const json &d = field(s, "direction", "certificate step");
    StepDirection dir;
    if (d == direction_name(StepDirection::Forward))
      dir = StepDirection::Forward;
    else if (d == direction_name(StepDirection::Inverted))
      dir = StepDirection::Inverted;
    else
      bad("certificate direction");
    try {
      c.steps.push_back({square_from_json(field(s, "square", "certificate step"), t), dir});
    } catch (const Error &e) {
      fail(e.kind(), "square " + std::to_string(c.steps.size()) + ": " + e.what());
    }
  }
  return c;
}

json to_json(const Roof &r, const SymbolTable &t) {
  return {{"apex", to_json(r.apex, t)},
          {"left", to_json(r.left, t)},
          {"right", to_json(r.right, t)},
          {"certificate", to_json(r.certificate, t)}};
}

Roof roof_from_json(const json &j, const SymbolTable &t) {
  const char *w = "roof";
  Roof r = make_roof(heart_morphism_from_json(field(j, "left", w), t),
                     certificate_from_json(field(j, "certificate", w), t),
                     heart_morphism_from_json(field(j, "right", w), t));
  if (!(r.apex == heart_from_json(field(j, "apex", w), t)))
    bad("roof: apex does not match the legs");
  return r;
}

json to_json(const PgaGroup &p, const SymbolTable &t) {
  return {{"group", to_json(p.group())},
          {"ambient", to_json(p.ambient())},
          {"embedding", to_json(p.iota(), t)}};
}

PgaGroup pga_from_json(const json &j, const SymbolTable &t) {
  const char *w = "pga group";
  return PgaGroup(fg_group_from_json(field(j, "group", w)),
                  group_from_json(field(j, "ambient", w)),
                  morphism_from_json(field(j, "embedding", w), t));
}

json to_json(const PgaMorphism &f, const SymbolTable &t) {
  return {{"source", to_json(f.source(), t)},
          {"target", to_json(f.target(), t)},
          {"map", to_json(f.discrete_map())}};
}

PgaMorphism pga_morphism_from_json(const json &j, const SymbolTable &t) {
  const char *w = "pga morphism";
  return PgaMorphism(pga_from_json(field(j, "source", w), t),
                     pga_from_json(field(j, "target", w), t),
                     fg_morphism_from_json(field(j, "map", w)));
}

json to_json(const LatticeIsogenyWitness &w, const SymbolTable &t) {
  json out = json::array();
  for (const auto &l : w.links)
    out.push_back({{"kind", link_kind_name(l.kind)},
                   {"defect", to_json(l.defect)},
                   {"map", to_json(l.map, t)}});
  return out;
}

LatticeIsogenyWitness witness_from_json(const json &j, const SymbolTable &t) {
  if (!j.is_array())
    bad("isogeny witness");
  LatticeIsogenyWitness w;
  for (const auto &l : j) {
    const json &k = field(l, "kind", "isogeny link");
    LinkKind kind;
    if (k == link_kind_name(LinkKind::AdmissibleEpic))
      kind = LinkKind::AdmissibleEpic;
    else if (k == link_kind_name(LinkKind::AdmissibleMonic))
      kind = LinkKind::AdmissibleMonic;
    else
      bad("isogeny link kind");
    w.links.push_back({pga_morphism_from_json(field(l, "map", "isogeny link"), t), kind,
                       fg_group_from_json(field(l, "defect", "isogeny link"))});
  }
  return w;
}

} // namespace lcah::io
