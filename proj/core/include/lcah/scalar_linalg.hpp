#pragma once

#include <optional>
#include <vector>

#include "lcah/intlinalg.hpp"
#include "lcah/matrix.hpp"
#include "lcah/scalar.hpp"

namespace lcah {

using ScalarMatrix = Matrix<Scalar>;

// Quotient of two Laurent polynomials, reduced whenever the division is exact.
class Frac {
public:
  Frac() : num_(), den_(1) {}
  Frac(long v) : num_(v), den_(1) {}
  Frac(const Scalar &s) : num_(s), den_(1) {}
  Frac(Scalar num, Scalar den);

  const Scalar &num() const { return num_; }
  const Scalar &den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_unit() const { return num_.is_unit() && den_.is_unit(); }
  bool is_scalar() const { return den_ == Scalar(1); }
  // Throws OutsideFragment if the value is not a Laurent polynomial.
  Scalar to_scalar() const;

  Frac operator+(const Frac &o) const;
  Frac operator-(const Frac &o) const;
  Frac operator-() const;
  Frac operator*(const Frac &o) const;
  Frac operator/(const Frac &o) const;
  Frac &operator+=(const Frac &o) { return *this = *this + o; }
  bool operator==(const Frac &o) const;

private:
  void reduce();
  Scalar num_, den_;
};

using FracMatrix = Matrix<Frac>;

FracMatrix to_frac(const ScalarMatrix &m);
ScalarMatrix to_scalar(const FracMatrix &m);
ScalarMatrix to_scalar(const IntMatrix &m);

struct EchelonForm {
  FracMatrix R;                     // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

EchelonForm reduced_echelon(const FracMatrix &m);
std::size_t rank(const ScalarMatrix &m);

// Columns spanning {x : m x = 0}, scaled to Laurent entries.
ScalarMatrix right_nullspace(const ScalarMatrix &m);
// Rows spanning {y : y m = 0}, scaled to Laurent entries.
ScalarMatrix left_nullspace(const ScalarMatrix &m);
// Some x with m x = v (free coordinates zero), or nullopt if inconsistent.
std::optional<std::vector<Frac>> solve_linear(const ScalarMatrix &m,
                                              const std::vector<Scalar> &v);

// Splits Σ_j s_j u_j = 0 (u integer) into rational equations per monomial,
// each scaled to integer coefficients.
IntMatrix split_by_monomial(const ScalarMatrix &rows);

} // namespace lcah
