#include "lcah/scalar_linalg.hpp"

#include <map>

namespace lcah {

Frac::Frac(Scalar num, Scalar den) : num_(std::move(num)), den_(std::move(den)) {
  reduce();
}

void Frac::reduce() {
  if (den_.is_zero())
    fail(ErrorKind::Scalar, "division by zero");
  if (num_.is_zero()) {
    den_ = Scalar(1);
    return;
  }
  if (den_ == Scalar(1))
    return;
  if (auto q = num_.try_divide(den_)) {
    num_ = *q;
    den_ = Scalar(1);
    return;
  }
  // Make the denominator's leading coefficient 1 so equal values look alike.
  const Rat lead = den_.terms().back().second;
  if (lead != 1) {
    num_ = num_ * Scalar(1 / lead);
    den_ = den_ * Scalar(1 / lead);
  }
}

Scalar Frac::to_scalar() const {
  if (den_ == Scalar(1))
    return num_;
  return num_.divide(den_);
}

Frac Frac::operator+(const Frac &o) const {
  if (den_ == o.den_)
    return Frac(num_ + o.num_, den_);
  return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Frac Frac::operator-() const {
  Frac r = *this;
  r.num_ = -r.num_;
  return r;
}

Frac Frac::operator-(const Frac &o) const { return *this + (-o); }

Frac Frac::operator*(const Frac &o) const {
  if (is_zero() || o.is_zero())
    return Frac();
  return Frac(num_ * o.num_, den_ * o.den_);
}

Frac Frac::operator/(const Frac &o) const {
  if (o.is_zero())
    fail(ErrorKind::Scalar, "division by zero");
  return Frac(num_ * o.den_, den_ * o.num_);
}

bool Frac::operator==(const Frac &o) const {
  return num_ * o.den_ == o.num_ * den_;
}

FracMatrix to_frac(const ScalarMatrix &m) {
  return m.map([](const Scalar &s) { return Frac(s); });
}

ScalarMatrix to_scalar(const FracMatrix &m) {
  return m.map([](const Frac &f) { return f.to_scalar(); });
}

ScalarMatrix to_scalar(const IntMatrix &m) {
  return m.map([](const Int &x) { return Scalar(x); });
}

EchelonForm reduced_echelon(const FracMatrix &m) {
  EchelonForm e{m, {}};
  FracMatrix &R = e.R;
  std::size_t row = 0;
  for (std::size_t col = 0; col < R.cols() && row < R.rows(); ++col) {
    // Prefer a unit pivot: it keeps the entries polynomial.
    std::size_t piv = R.rows();
    for (std::size_t i = row; i < R.rows(); ++i) {
      if (R(i, col).is_zero())
        continue;
      if (piv == R.rows())
        piv = i;
      if (R(i, col).is_unit()) {
        piv = i;
        break;
      }
    }
    if (piv == R.rows())
      continue;
    R.swap_rows(row, piv);
    Frac p = R(row, col);
    for (std::size_t j = 0; j < R.cols(); ++j)
      if (!R(row, j).is_zero())
        R(row, j) = R(row, j) / p;
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (i == row || R(i, col).is_zero())
        continue;
      Frac f = R(i, col);
      for (std::size_t j = 0; j < R.cols(); ++j)
        if (!R(row, j).is_zero())
          R(i, j) = R(i, j) - f * R(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const ScalarMatrix &m) {
  return reduced_echelon(to_frac(m)).pivots.size();
}

namespace {

std::vector<Scalar> clear_denominators(const std::vector<Frac> &v) {
  Scalar scale(1);
  std::vector<Scalar> dens;
  for (const auto &f : v) {
    if (f.is_scalar())
      continue;
    bool seen = false;
    for (const auto &d : dens)
      if (d == f.den())
        seen = true;
    if (!seen) {
      dens.push_back(f.den());
      scale = scale * f.den();
    }
  }
  std::vector<Scalar> out;
  for (const auto &f : v)
    out.push_back((f * Frac(scale)).to_scalar());
  return out;
}

} // namespace

ScalarMatrix right_nullspace(const ScalarMatrix &m) {
  EchelonForm e = reduced_echelon(to_frac(m));
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots)
    is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Frac> x(n, Frac());
    x[f] = Frac(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      x[e.pivots[i]] = -e.R(i, f);
    basis.push_back(clear_denominators(x));
  }
  ScalarMatrix out(n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      out(i, k) = basis[k][i];
  return out;
}

ScalarMatrix left_nullspace(const ScalarMatrix &m) {
  return right_nullspace(m.transpose()).transpose();
}

std::optional<std::vector<Frac>> solve_linear(const ScalarMatrix &m,
                                              const std::vector<Scalar> &v) {
  if (v.size() != m.rows())
    fail(ErrorKind::ShapeMismatch, "solve_linear shape mismatch");
  FracMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      aug(i, j) = Frac(m(i, j));
    aug(i, m.cols()) = Frac(v[i]);
  }
  EchelonForm e = reduced_echelon(aug);
  std::vector<Frac> x(m.cols(), Frac());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols())
      return std::nullopt;
    x[e.pivots[i]] = e.R(i, m.cols());
  }
  return x;
}

IntMatrix split_by_monomial(const ScalarMatrix &rows) {
  std::vector<std::vector<Int>> out;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    std::map<Monomial, std::vector<Rat>> per;
    for (std::size_t j = 0; j < rows.cols(); ++j)
      for (const auto &[mono, c] : rows(i, j).terms()) {
        auto &row = per[mono];
        if (row.empty())
          row.assign(rows.cols(), Rat(0));
        row[j] = c;
      }
    for (auto &[mono, row] : per) {
      Int l = 1;
      for (const auto &q : row)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      std::vector<Int> r;
      for (const auto &q : row)
        r.push_back(Int(Rat(q * Rat(l)).get_num()));
      out.push_back(std::move(r));
    }
  }
  return IntMatrix::from_rows(out, rows.cols());
}

} // namespace lcah
