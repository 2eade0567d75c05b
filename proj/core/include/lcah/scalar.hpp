#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lcah/errors.hpp"

namespace lcah {

using Int = mpz_class;
using Rat = mpq_class;

std::string rat_to_string(const Rat &q);
Rat rat_from_string(const std::string &s);
Rat floor_rat(const Rat &q);
Rat frac_part(const Rat &q); // in [0,1)

// Declared irrationals. Index 0 stands for the rational unit; symbols are 1..n.
class SymbolTable {
public:
  SymbolTable();

  std::uint32_t declare(const std::string &name,
                        std::optional<double> shadow = std::nullopt);
  std::optional<std::uint32_t> find(const std::string &name) const;
  const std::string &name(std::uint32_t index) const;
  std::optional<double> shadow(std::uint32_t index) const;
  void set_shadow(std::uint32_t index, double value);
  std::size_t size() const { return names_.size(); }
  std::uint64_t id() const { return id_; }

private:
  std::uint64_t id_;
  std::vector<std::string> names_;
  std::vector<std::optional<double>> shadows_;
};

// Laurent monomial: sorted (symbol index, nonzero exponent) pairs. Empty is 1.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::int32_t>> powers;

  bool is_unit() const { return powers.empty(); }
  Monomial operator*(const Monomial &o) const;
  Monomial inverse() const;
  auto operator<=>(const Monomial &) const = default;
  bool operator==(const Monomial &) const = default;
};

// Exact real: Q-linear combination of Laurent monomials in the declared
// symbols, the monomials being assumed Q-linearly independent.
class Scalar {
public:
  using Term = std::pair<Monomial, Rat>;

  Scalar() = default;
  Scalar(long v) : Scalar(Rat(v)) {}
  Scalar(const Int &v) : Scalar(Rat(v)) {}
  Scalar(const Rat &q);
  static Scalar symbol(const SymbolTable &t, std::uint32_t index,
                       std::int32_t exponent = 1);
  static Scalar monomial(std::uint64_t table, Monomial m, Rat coeff);

  const std::vector<Term> &terms() const { return terms_; }
  std::uint64_t table() const { return table_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_integer() const;
  bool is_unit() const { return terms_.size() == 1; }
  Rat rational_part() const;
  Scalar symbolic_part() const;
  // Valid only when is_rational().
  Rat to_rational() const;
  Int to_integer() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar &o) const;
  Scalar operator-(const Scalar &o) const;
  Scalar operator*(const Scalar &o) const;
  Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
  Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
  Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
  bool operator==(const Scalar &o) const { return terms_ == o.terms_; }

  // Exact quotient inside the Laurent ring, if it exists.
  std::optional<Scalar> try_divide(const Scalar &d) const;
  // Like try_divide but throws OutsideFragment.
  Scalar divide(const Scalar &d) const;

  std::string to_string(const SymbolTable &t) const;

private:
  void normalize();
  std::vector<Term> terms_;
  std::uint64_t table_ = 0;
};

std::uint64_t merge_tables(std::uint64_t a, std::uint64_t b);

// Element of T = R/Z: a Scalar whose rational part lies in [0,1).
class CircleScalar {
public:
  CircleScalar() = default;
  explicit CircleScalar(const Scalar &s);
  const Scalar &value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool operator==(const CircleScalar &o) const { return value_ == o.value_; }

private:
  Scalar value_;
};

Scalar linear_combine(const std::vector<std::pair<Rat, Scalar>> &terms);
CircleScalar circle_reduce(const Scalar &s);
double shadow_eval(const Scalar &s, const SymbolTable &t);

std::string monomial_key(const Monomial &m, const SymbolTable &t);
Monomial parse_monomial_key(const std::string &key, const SymbolTable &t);

} // namespace lcah
