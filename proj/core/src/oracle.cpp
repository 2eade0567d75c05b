#include "lcah/oracle.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace lcah {

using json = nlohmann::json;

json report_to_json(const std::vector<OracleCase> &cases) {
  json out = json::array();
  for (const auto &c : cases)
    out.push_back({{"case-id", c.id}, {"status", c.pass ? "pass" : "fail"},
                   {"witness", c.witness}});
  return out;
}

namespace {

using Element = std::vector<long>;

std::vector<long> orders_of(const FgAbGroup &g) {
  if (!g.is_finite())
    fail(ErrorKind::InvalidMorphism, "brute force needs finite groups");
  std::vector<long> d;
  for (const Int &t : g.torsion())
    d.push_back(t.get_si());
  return d;
}

long group_order(const std::vector<long> &d) {
  long n = 1;
  for (long x : d) {
    n *= x;
    if (n > kBruteOrderLimit)
      fail(ErrorKind::OrderBoundExceeded,
           "group order exceeds " + std::to_string(kBruteOrderLimit));
  }
  return n;
}

std::vector<Element> elements(const std::vector<long> &d) {
  std::vector<Element> out;
  long n = group_order(d);
  out.reserve(n);
  Element x(d.size(), 0);
  for (long i = 0; i < n; ++i) {
    out.push_back(x);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (++x[j] < d[j])
        break;
      x[j] = 0;
    }
  }
  return out;
}

Element apply(const FgAbMorphism &f, const std::vector<long> &target,
              const Element &x) {
  const IntMatrix &m = f.matrix();
  Element y(target.size(), 0);
  for (std::size_t i = 0; i < target.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc = (acc + m(i, j).get_si() % target[i] * x[j]) % target[i];
    y[i] = (acc + target[i]) % target[i];
  }
  return y;
}

long element_order(const std::vector<long> &d, const Element &x) {
  long o = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    o = std::lcm(o, d[i] / std::gcd(x[i], d[i]));
  return o;
}

json order_histogram(const std::vector<long> &d, const std::vector<Element> &xs) {
  std::map<long, long> h;
  for (const auto &x : xs)
    ++h[element_order(d, x)];
  json out = json::object();
  for (auto [k, v] : h)
    out[std::to_string(k)] = v;
  return out;
}

// emb must be a bijection from its source onto the enumerated subset.
bool embeds_onto(const FgAbMorphism &emb, const std::vector<long> &target,
                 const std::set<Element> &subset, std::vector<std::string> &why,
                 const char *what) {
  std::vector<long> s = orders_of(emb.source());
  std::set<Element> seen;
  for (const auto &x : elements(s)) {
    Element y = apply(emb, target, x);
    if (!subset.count(y)) {
      why.push_back(std::string(what) + " embedding leaves the enumerated set");
      return false;
    }
    seen.insert(y);
  }
  if (seen.size() != subset.size() ||
      seen.size() != static_cast<std::size_t>(group_order(s))) {
    why.push_back(std::string(what) + " has " + std::to_string(group_order(s)) +
                  " elements, enumeration found " + std::to_string(subset.size()));
    return false;
  }
  return true;
}

OracleCase compare(const FgAbMorphism &f, const FgAbMorphism &ker_emb,
                   const FgAbMorphism &im_emb, const FgAbMorphism &coker_proj,
                   std::string id) {
  std::vector<long> s = orders_of(f.source()), t = orders_of(f.target());
  std::vector<Element> src = elements(s), tgt = elements(t);
  std::set<Element> ker, im;
  Element zero(t.size(), 0);
  for (const auto &x : src) {
    Element y = apply(f, t, x);
    if (y == zero)
      ker.insert(x);
    im.insert(y);
  }
  std::vector<std::string> why;
  embeds_onto(ker_emb, s, ker, why, "kernel");
  embeds_onto(im_emb, t, im, why, "image");
  // The projection must kill the image, be onto, and have the right size;
  // together these force target/image ≅ cokernel.
  std::vector<long> q = orders_of(coker_proj.target());
  Element qzero(q.size(), 0);
  std::set<Element> hit;
  for (const auto &y : tgt)
    hit.insert(apply(coker_proj, q, y));
  for (const auto &y : im)
    if (apply(coker_proj, q, y) != qzero) {
      why.push_back("cokernel projection does not kill the image");
      break;
    }
  if (hit.size() != static_cast<std::size_t>(group_order(q)))
    why.push_back("cokernel projection is not onto");
  if (static_cast<long>(im.size()) * group_order(q) != static_cast<long>(tgt.size()))
    why.push_back("cokernel has the wrong order");

  OracleCase c{std::move(id), why.empty(), json::object()};
  std::vector<Element> kv(ker.begin(), ker.end()), iv(im.begin(), im.end());
  c.witness["kernel"] = {{"group", ker_emb.source().to_string()},
                         {"orders", order_histogram(s, kv)}};
  c.witness["image"] = {{"group", im_emb.source().to_string()},
                        {"orders", order_histogram(t, iv)}};
  c.witness["cokernel"] = {{"group", coker_proj.target().to_string()},
                           {"order", static_cast<long>(tgt.size() / im.size())}};
  if (!why.empty())
    c.witness["mismatches"] = why;
  return c;
}

} // namespace

OracleCase brute_finite_check(const FgAbMorphism &f, std::string id) {
  FgKernel k = fg_kernel(f);
  FgCokernel q = fg_cokernel(f);
  FgKernel im = fg_kernel(q.projection);
  return compare(f, k.embedding, im.embedding, q.projection, std::move(id));
}

OracleCase brute_finite_check(const ElcaMorphism &f, std::string id) {
  if (!f.source().is_compact() || !f.source().is_discrete() ||
      !f.target().is_compact() || !f.target().is_discrete())
    fail(ErrorKind::InvalidMorphism, "brute force needs finite groups");
  Subobject k = kernel(f);
  Subobject im = closure_of_image(f);
  Quotient q = cokernel(f);
  return compare(f.discrete_part(), k.embedding.discrete_part(),
                 im.embedding.discrete_part(), q.projection.discrete_part(),
                 std::move(id));
}

namespace {

std::vector<std::vector<double>> shadow_matrix(const ScalarMatrix &m,
                                               const SymbolTable &t) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i][j] = shadow_eval(m(i, j), t);
  return out;
}

double frac(double x) { return x - std::floor(x); }

double circle_dist(double x, double y) {
  double d = std::fabs(frac(x) - frac(y));
  return std::min(d, 1.0 - d);
}

struct ShadowPoint {
  std::vector<double> real; // T coordinates in [0,1)
  std::vector<long> ints;   // F coordinates
};

// Image of a point given by real and integer cover coordinates.
ShadowPoint evaluate(const std::vector<std::vector<double>> &A,
                     const std::vector<std::vector<double>> &B, const IntMatrix &C,
                     const std::vector<long> &mods, const std::vector<double> &x,
                     const std::vector<long> &m) {
  ShadowPoint p;
  for (std::size_t i = 0; i < A.size(); ++i) {
    double v = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      v += A[i][j] * x[j];
    for (std::size_t j = 0; j < m.size(); ++j)
      v += B[i][j] * static_cast<double>(m[j]);
    p.real.push_back(frac(v));
  }
  for (std::size_t i = 0; i < mods.size(); ++i) {
    long v = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
      v = (v + C(i, j).get_si() % mods[i] * (m[j] % mods[i])) % mods[i];
    p.ints.push_back((v + mods[i]) % mods[i]);
  }
  return p;
}

struct CellKey {
  std::vector<long> key;
  bool operator==(const CellKey &) const = default;
};
struct CellHash {
  std::size_t operator()(const CellKey &k) const {
    std::size_t h = 1469598103934665603ull;
    for (long v : k.key)
      h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

} // namespace

OracleCase shadow_density_check(const ElcaMorphism &f, const Subobject &claimed,
                                const SymbolTable &symbols, const ShadowOptions &opt,
                                std::string id) {
  OracleCase out{std::move(id), false, json::object()};
  const ElcaGroup &S = f.source(), &Y = f.target(), &C = claimed.group;
  if (!S.is_discrete() || !Y.is_compact())
    fail(ErrorKind::InvalidMorphism,
         "shadow audit needs a discrete source and a compact target");
  if (!(claimed.embedding.target() == Y) || !(claimed.embedding.source() == C))
    fail(ErrorKind::ShapeMismatch, "claimed closure does not embed in the target");
  for (std::uint32_t i = 1; i < symbols.size(); ++i)
    if (!symbols.shadow(i))
      fail(ErrorKind::MissingShadow, "symbol " + symbols.name(i) + " has no shadow");
  if (!C.is_compact()) {
    out.witness["reason"] = "claimed closure " + C.to_string() + " is not compact";
    return out;
  }

  std::vector<long> ymods, cmods;
  for (const Int &d : Y.torsion())
    ymods.push_back(d.get_si());
  for (const Int &d : C.torsion())
    cmods.push_back(d.get_si());
  auto fB = shadow_matrix(f.B(), symbols);
  auto fA = shadow_matrix(f.A(), symbols);
  auto eA = shadow_matrix(claimed.embedding.A(), symbols);
  auto eB = shadow_matrix(claimed.embedding.B(), symbols);

  // Samples: consecutive multiples for a cyclic source, random otherwise.
  std::vector<long> smods;
  for (std::size_t j = 0; j < S.int_dim(); ++j)
    smods.push_back(j < S.b() ? 0 : S.torsion()[j - S.b()].get_si());
  std::mt19937_64 rng(opt.seed);
  long radius = std::max<long>(
      1, static_cast<long>(std::ceil(std::pow(static_cast<double>(opt.samples),
                                              1.0 / std::max<std::size_t>(1, smods.size())))));
  std::vector<ShadowPoint> samples;
  samples.reserve(opt.samples);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    std::vector<long> m(smods.size());
    if (smods.size() == 1) {
      m[0] = static_cast<long>(s);
    } else {
      for (std::size_t j = 0; j < m.size(); ++j)
        m[j] = smods[j] ? std::uniform_int_distribution<long>(0, smods[j] - 1)(rng)
                        : std::uniform_int_distribution<long>(-radius, radius)(rng);
    }
    samples.push_back(evaluate(fA, fB, f.C(), ymods, {}, m));
  }

  // Soundness: characters vanishing on the claim vanish on every sample.
  Subobject ann = kernel(pontryagin_dual(claimed.embedding));
  const IntMatrix &chi = ann.embedding.C(); // rows: Z^c then F of the dual
  double worst = 0;
  std::size_t c = Y.c();
  for (const auto &p : samples)
    for (std::size_t g = 0; g < chi.cols(); ++g) {
      double v = 0;
      for (std::size_t i = 0; i < c; ++i)
        v += chi(i, g).get_d() * p.real[i];
      for (std::size_t i = 0; i < ymods.size(); ++i)
        v += chi(c + i, g).get_d() * static_cast<double>(p.ints[i]) /
             static_cast<double>(ymods[i]);
      worst = std::max(worst, circle_dist(v, 0.0));
    }
  out.witness["annihilator_generators"] = chi.cols();
  out.witness["max_character_residual"] = worst;
  bool sound = worst <= opt.tolerance;

  // Coverage: a grid of the claim in parameter space, step eps / slope.
  std::size_t d = C.c();
  double slope = 0;
  for (const auto &row : eA) {
    double r = 0;
    for (double v : row)
      r += std::fabs(v);
    slope = std::max(slope, r);
  }
  double step = slope > 0 ? opt.eps / slope : 1.0;
  long per_axis = d == 0 ? 1 : static_cast<long>(std::ceil(1.0 / step));
  double grid_size = std::pow(static_cast<double>(per_axis), static_cast<double>(d));
  long components = 1;
  for (long x : cmods)
    components *= x;
  out.witness["grid_points"] = grid_size * static_cast<double>(components);
  if (grid_size * components > 1e7) {
    out.witness["reason"] = "coverage grid too large for the sample budget";
    return out;
  }

  long cells = static_cast<long>(std::ceil(1.0 / opt.eps));
  auto cell_of = [&](double x) { return std::min(cells - 1, static_cast<long>(x * cells)); };
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> index;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    CellKey k{samples[s].ints};
    for (double x : samples[s].real)
      k.key.push_back(cell_of(x));
    index[k].push_back(s);
  }
  auto near = [&](const ShadowPoint &p) {
    std::size_t n = p.real.size();
    std::vector<long> base;
    for (double x : p.real)
      base.push_back(cell_of(x));
    long combos = 1;
    for (std::size_t i = 0; i < n; ++i)
      combos *= 3;
    for (long code = 0; code < combos; ++code) {
      CellKey k{p.ints};
      long r = code;
      for (std::size_t i = 0; i < n; ++i, r /= 3)
        k.key.push_back(((base[i] + r % 3 - 1) % cells + cells) % cells);
      auto it = index.find(k);
      if (it == index.end())
        continue;
      for (std::size_t s : it->second) {
        double dist = 0;
        for (std::size_t i = 0; i < n; ++i)
          dist = std::max(dist, circle_dist(p.real[i], samples[s].real[i]));
        if (dist <= opt.eps)
          return true;
      }
    }
    return false;
  };

  std::vector<long> comp(cmods.size(), 0), axis(d, 0);
  long total = static_cast<long>(grid_size);
  json gaps = json::array();
  for (long j = 0; j < components; ++j) {
    for (long g = 0; g < total; ++g) {
      std::vector<double> theta(d);
      long r = g;
      for (std::size_t i = 0; i < d; ++i, r /= per_axis)
        theta[i] = static_cast<double>(r % per_axis) * step;
      ShadowPoint p = evaluate(eA, eB, claimed.embedding.C(), ymods, theta, comp);
      if (!near(p) && gaps.size() < 5)
        gaps.push_back({{"component", comp}, {"parameter", theta}});
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (++comp[i] < cmods[i])
        break;
      comp[i] = 0;
    }
  }
  out.witness["uncovered"] = gaps;
  out.pass = sound && gaps.empty();
  return out;
}

OracleCase double_dual_check(const ElcaGroup &g, std::size_t trials,
                             RandomSource &rng, std::string id) {
  OracleCase out{std::move(id), true, json::object()};
  if (!(pontryagin_dual(pontryagin_dual(g)) == g)) {
    out.pass = false;
    out.witness["group"] = g.to_string();
  }
  RandomBounds b;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    ElcaGroup t = rng.group(b);
    ElcaMorphism f = rng.morphism(g, t, b);
    if (!(pontryagin_dual(pontryagin_dual(f)) == f))
      ++bad;
  }
  out.witness["trials"] = trials;
  out.witness["failures"] = bad;
  out.pass = out.pass && bad == 0;
  return out;
}

} // namespace lcah
