#include "lcah/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace lcah {

std::string rat_to_string(const Rat &q) { return q.get_str(); }

Rat rat_from_string(const std::string &s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0)
    fail(ErrorKind::Parse, "not a rational number: '" + s + "'");
  if (q.get_den() == 0)
    fail(ErrorKind::Parse, "zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Rat floor_rat(const Rat &q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rat(f);
}

Rat frac_part(const Rat &q) { return q - floor_rat(q); }

// ---------------------------------------------------------------- table

static std::atomic<std::uint64_t> next_table_id{1};

SymbolTable::SymbolTable() : id_(next_table_id++) {
  names_.push_back("1");
  shadows_.push_back(1.0);
}

std::uint32_t SymbolTable::declare(const std::string &name,
                                   std::optional<double> shadow) {
  if (find(name))
    fail(ErrorKind::Scalar, "symbol '" + name + "' already declared");
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) ||
                        name[0] == '_'))
    fail(ErrorKind::Scalar, "invalid symbol name '" + name + "'");
  for (char ch : name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
      fail(ErrorKind::Scalar, "invalid symbol name '" + name + "'");
  static const char *reserved[] = {"R", "Z", "T", "mor", "let"};
  for (const char *r : reserved)
    if (name == r)
      fail(ErrorKind::Scalar, "symbol name '" + name + "' is reserved");
  names_.push_back(name);
  shadows_.push_back(std::nullopt);
  auto idx = static_cast<std::uint32_t>(names_.size() - 1);
  if (shadow)
    set_shadow(idx, *shadow);
  return idx;
}

std::optional<std::uint32_t> SymbolTable::find(const std::string &name) const {
  for (std::size_t i = 1; i < names_.size(); ++i)
    if (names_[i] == name)
      return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

const std::string &SymbolTable::name(std::uint32_t index) const {
  if (index >= names_.size())
    fail(ErrorKind::Scalar, "symbol index out of range");
  return names_[index];
}

std::optional<double> SymbolTable::shadow(std::uint32_t index) const {
  if (index >= shadows_.size())
    fail(ErrorKind::Scalar, "symbol index out of range");
  return shadows_[index];
}

void SymbolTable::set_shadow(std::uint32_t index, double value) {
  if (index == 0 || index >= names_.size())
    fail(ErrorKind::Scalar, "symbol index out of range");
  if (value == 0.0 || !std::isfinite(value))
    fail(ErrorKind::Scalar, "shadow of '" + names_[index] +
                                "' must be finite and nonzero");
  for (std::size_t i = 1; i < shadows_.size(); ++i)
    if (i != index && shadows_[i] && *shadows_[i] == value)
      fail(ErrorKind::Scalar, "shadow values must be pairwise distinct");
  shadows_[index] = value;
}

// ------------------------------------------------------------- monomial

Monomial Monomial::operator*(const Monomial &o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < powers.size() || j < o.powers.size()) {
    if (j == o.powers.size() ||
        (i < powers.size() && powers[i].first < o.powers[j].first)) {
      r.powers.push_back(powers[i++]);
    } else if (i == powers.size() || o.powers[j].first < powers[i].first) {
      r.powers.push_back(o.powers[j++]);
    } else {
      std::int32_t e = powers[i].second + o.powers[j].second;
      if (e != 0)
        r.powers.emplace_back(powers[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto &p : r.powers)
    p.second = -p.second;
  return r;
}

// --------------------------------------------------------------- scalar

std::uint64_t merge_tables(std::uint64_t a, std::uint64_t b) {
  if (a == 0)
    return b;
  if (b == 0 || a == b)
    return a;
  fail(ErrorKind::MixedSymbolTables, "scalars over different symbol tables");
}

Scalar::Scalar(const Rat &q) {
  if (q != 0)
    terms_.emplace_back(Monomial{}, q);
}

Scalar Scalar::symbol(const SymbolTable &t, std::uint32_t index,
                      std::int32_t exponent) {
  if (index == 0 || index >= t.size())
    fail(ErrorKind::Scalar, "symbol index out of range");
  if (exponent == 0)
    return Scalar(1);
  return monomial(t.id(), Monomial{{{index, exponent}}}, Rat(1));
}

Scalar Scalar::monomial(std::uint64_t table, Monomial m, Rat coeff) {
  Scalar s;
  if (coeff != 0) {
    s.terms_.emplace_back(std::move(m), std::move(coeff));
    s.table_ = s.terms_[0].first.is_unit() ? 0 : table;
  }
  return s;
}

void Scalar::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term &x, const Term &y) { return x.first < y.first; });
  std::vector<Term> out;
  for (auto &t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term &t) { return t.second == 0; }),
            out.end());
  terms_ = std::move(out);
  if (is_rational())
    table_ = 0;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
}

bool Scalar::is_integer() const {
  return is_rational() && to_rational().get_den() == 1;
}

Rat Scalar::rational_part() const {
  for (const auto &t : terms_)
    if (t.first.is_unit())
      return t.second;
  return Rat(0);
}

Scalar Scalar::symbolic_part() const {
  Scalar r = *this;
  r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(),
                                [](const Term &t) { return t.first.is_unit(); }),
                 r.terms_.end());
  if (r.terms_.empty())
    r.table_ = 0;
  return r;
}

Rat Scalar::to_rational() const {
  if (!is_rational())
    internal_error("to_rational on a symbolic scalar");
  return terms_.empty() ? Rat(0) : terms_[0].second;
}

Int Scalar::to_integer() const {
  Rat q = to_rational();
  if (q.get_den() != 1)
    internal_error("to_integer on a non-integral scalar");
  return q.get_num();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto &t : r.terms_)
    t.second = -t.second;
  return r;
}

Scalar Scalar::operator+(const Scalar &o) const {
  Scalar r;
  r.table_ = merge_tables(table_, o.table_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].second + o.terms_[j].second;
      if (c != 0)
        r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  if (r.is_rational())
    r.table_ = 0;
  return r;
}

Scalar Scalar::operator-(const Scalar &o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar &o) const {
  Scalar r;
  if (is_zero() || o.is_zero())
    return r;
  r.table_ = merge_tables(table_, o.table_);
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto &x : terms_)
    for (const auto &y : o.terms_)
      r.terms_.emplace_back(x.first * y.first, x.second * y.second);
  r.normalize();
  return r;
}

namespace {

using Exps = std::vector<int>;
using Poly = std::map<Exps, Rat, std::greater<Exps>>;

} // namespace

std::optional<Scalar> Scalar::try_divide(const Scalar &d) const {
  if (d.is_zero())
    fail(ErrorKind::Scalar, "division by zero");
  std::uint64_t table = merge_tables(table_, d.table_);
  if (is_zero())
    return Scalar();
  if (d.is_unit()) {
    const auto &[m, c] = d.terms_[0];
    return *this * monomial(table, m.inverse(), 1 / c);
  }
  // Multivariate exact division on the polynomial parts after clearing
  // the monomial content of both operands.
  std::vector<std::uint32_t> vars;
  for (const auto *s : {this, &d})
    for (const auto &t : s->terms_)
      for (const auto &p : t.first.powers)
        vars.push_back(p.first);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  auto dense = [&](const Monomial &m) {
    Exps e(vars.size(), 0);
    for (const auto &p : m.powers) {
      auto it = std::lower_bound(vars.begin(), vars.end(), p.first);
      e[it - vars.begin()] = p.second;
    }
    return e;
  };
  auto to_poly = [&](const Scalar &s, Exps &shift) {
    std::vector<Exps> all;
    for (const auto &t : s.terms_)
      all.push_back(dense(t.first));
    shift.assign(vars.size(), 0);
    for (std::size_t v = 0; v < vars.size(); ++v) {
      int lo = all[0][v];
      for (const auto &e : all)
        lo = std::min(lo, e[v]);
      shift[v] = lo;
    }
    Poly p;
    for (std::size_t k = 0; k < all.size(); ++k) {
      for (std::size_t v = 0; v < vars.size(); ++v)
        all[k][v] -= shift[v];
      p[all[k]] = s.terms_[k].second;
    }
    return p;
  };
  Exps shift_num, shift_den;
  Poly num = to_poly(*this, shift_num);
  Poly den = to_poly(d, shift_den);
  const auto &[dlead, dcoef] = *den.begin();
  Poly quot;
  while (!num.empty()) {
    const auto [lead, coef] = *num.begin();
    Exps q(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
      q[v] = lead[v] - dlead[v];
      if (q[v] < 0)
        return std::nullopt;
    }
    Rat qc = coef / dcoef;
    quot[q] += qc;
    for (const auto &[e, c] : den) {
      Exps s(vars.size());
      for (std::size_t v = 0; v < vars.size(); ++v)
        s[v] = e[v] + q[v];
      Rat &slot = num[s];
      slot -= qc * c;
      if (slot == 0)
        num.erase(s);
    }
  }
  Scalar r;
  r.table_ = table;
  for (const auto &[e, c] : quot) {
    if (c == 0)
      continue;
    Monomial m;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      int x = e[v] + shift_num[v] - shift_den[v];
      if (x != 0)
        m.powers.emplace_back(vars[v], x);
    }
    r.terms_.emplace_back(std::move(m), c);
  }
  r.normalize();
  return r;
}

Scalar Scalar::divide(const Scalar &d) const {
  auto q = try_divide(d);
  if (!q)
    fail(ErrorKind::OutsideFragment,
         "quotient is not a Laurent polynomial in the declared symbols");
  return *q;
}

std::string monomial_key(const Monomial &m, const SymbolTable &t) {
  if (m.is_unit())
    return "0";
  std::string s;
  for (const auto &[idx, e] : m.powers) {
    if (!s.empty())
      s += "*";
    s += t.name(idx);
    if (e != 1)
      s += "^" + std::to_string(e);
  }
  return s;
}

Monomial parse_monomial_key(const std::string &key, const SymbolTable &t) {
  Monomial m;
  if (key == "0")
    return m;
  std::stringstream ss(key);
  std::string factor;
  Scalar acc(1);
  while (std::getline(ss, factor, '*')) {
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    long e = 1;
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        e = std::stol(factor.substr(caret + 1), &used);
        if (used != factor.size() - caret - 1 || e == 0)
          throw std::invalid_argument("exp");
      } catch (const std::exception &) {
        fail(ErrorKind::Parse, "bad exponent in monomial '" + key + "'");
      }
    }
    auto idx = t.find(name);
    if (!idx)
      fail(ErrorKind::Parse, "unknown symbol '" + name + "'");
    acc = acc * Scalar::symbol(t, *idx, static_cast<std::int32_t>(e));
  }
  if (acc.terms().size() != 1)
    fail(ErrorKind::Parse, "bad monomial '" + key + "'");
  return acc.terms()[0].first;
}

std::string Scalar::to_string(const SymbolTable &t) const {
  if (terms_.empty())
    return "0";
  std::string out;
  // Symbolic terms first, the rational constant last.
  std::vector<const Term *> order;
  for (const auto &term : terms_)
    if (!term.first.is_unit())
      order.push_back(&term);
  for (const auto &term : terms_)
    if (term.first.is_unit())
      order.push_back(&term);
  bool first = true;
  for (const Term *term : order) {
    Rat c = term->second;
    bool neg = c < 0;
    if (neg)
      c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (term->first.is_unit()) {
      out += rat_to_string(c);
    } else {
      if (c != 1)
        out += rat_to_string(c) + "*";
      out += monomial_key(term->first, t);
    }
  }
  return out;
}

CircleScalar::CircleScalar(const Scalar &s)
    : value_(s - Scalar(floor_rat(s.rational_part()))) {}

Scalar linear_combine(const std::vector<std::pair<Rat, Scalar>> &terms) {
  Scalar acc;
  for (const auto &[q, s] : terms)
    acc += Scalar(q) * s;
  return acc;
}

CircleScalar circle_reduce(const Scalar &s) { return CircleScalar(s); }

double shadow_eval(const Scalar &s, const SymbolTable &t) {
  if (s.table() != 0 && s.table() != t.id())
    fail(ErrorKind::MixedSymbolTables, "scalar evaluated against another table");
  double acc = 0;
  for (const auto &[m, c] : s.terms()) {
    double v = c.get_d();
    for (const auto &[idx, e] : m.powers) {
      auto sh = t.shadow(idx);
      if (!sh)
        fail(ErrorKind::MissingShadow,
             "symbol '" + t.name(idx) + "' has no shadow value");
      v *= std::pow(*sh, e);
    }
    acc += v;
  }
  return acc;
}

} // namespace lcah
