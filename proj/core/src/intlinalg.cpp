#include "lcah/intlinalg.hpp"

#include <algorithm>

namespace lcah {

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int &a, const Int &b) {
  Int r;
  Int ab = abs(b);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), ab.get_mpz_t());
  return r;
}

namespace {

// Nearest-integer quotient keeps remainders small during reduction.
Int round_div(const Int &a, const Int &b) {
  Int q = floor_div(a, b);
  Int r = a - q * b;
  if (2 * abs(r) > abs(b))
    q += (b > 0) == (r > 0) ? 1 : -1;
  return q;
}

bool find_pivot(const IntMatrix &D, std::size_t t, std::size_t &pi,
                std::size_t &pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0)
        continue;
      Int a = abs(D(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm s{IntMatrix::identity(m), M, IntMatrix::identity(n), 0};
  IntMatrix &U = s.U, &D = s.D, &V = s.V;
  std::size_t t = 0;
  while (t < std::min(m, n)) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(D, t, pi, pj))
      break;
    for (;;) {
      D.swap_rows(t, pi);
      U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      V.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0)
          continue;
        Int q = round_div(D(i, t), D(t, t));
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0)
          continue;
        Int q = round_div(D(t, j), D(t, t));
        D.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (D(t, j) != 0)
          clean = false;
      }
      if (clean) {
        // Enforce divisibility of the remaining block by the pivot.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(i, j) % D(t, t) != 0) {
              D.add_row(t, i, Int(1));
              U.add_row(t, i, Int(1));
              divisible = false;
              break;
            }
        if (divisible)
          break;
      }
      find_pivot(D, t, pi, pj);
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j)
        D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j)
        U(t, j) = -U(t, j);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

IntMatrix hermite_column_basis(const IntMatrix &B) {
  IntMatrix H = B;
  const std::size_t n = H.rows();
  std::size_t c = 0; // next pivot column
  for (std::size_t r = 0; r < n && c < H.cols(); ++r) {
    // gcd-eliminate row r across columns c..end.
    for (;;) {
      std::size_t best = H.cols();
      for (std::size_t j = c; j < H.cols(); ++j)
        if (H(r, j) != 0 && (best == H.cols() || abs(H(r, j)) < abs(H(r, best))))
          best = j;
      if (best == H.cols())
        break;
      H.swap_cols(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < H.cols(); ++j) {
        if (H(r, j) == 0)
          continue;
        Int q = floor_div(H(r, j), H(r, c));
        H.add_col(j, c, -q);
        if (H(r, j) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (H(r, c) == 0)
      continue;
    if (H(r, c) < 0)
      for (std::size_t i = 0; i < n; ++i)
        H(i, c) = -H(i, c);
    for (std::size_t j = 0; j < c; ++j) {
      Int q = floor_div(H(r, j), H(r, c));
      if (q != 0)
        H.add_col(j, c, -q);
    }
    ++c;
  }
  return H.block(0, 0, n, c);
}

IntMatrix integer_kernel(const IntMatrix &M) {
  const std::size_t n = M.cols();
  if (M.rows() == 0)
    return IntMatrix::identity(n);
  SmithForm s = smith_normal_form(M);
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < n; ++j)
    cols.push_back(j);
  return hermite_column_basis(s.V.select_columns(cols));
}

std::optional<IntMatrix> integer_solve(const IntMatrix &M, const IntMatrix &b) {
  if (b.rows() != M.rows() || b.cols() != 1)
    fail(ErrorKind::ShapeMismatch, "integer_solve shape mismatch");
  SmithForm s = smith_normal_form(M);
  IntMatrix c = s.U * b;
  IntMatrix y(M.cols(), 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (i < s.rank) {
      if (c(i, 0) % s.D(i, i) != 0)
        return std::nullopt;
      y(i, 0) = c(i, 0) / s.D(i, i);
    } else if (c(i, 0) != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

Int determinant(const IntMatrix &M) {
  if (M.rows() != M.cols())
    fail(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  // Fraction-free Bareiss elimination.
  IntMatrix A = M;
  const std::size_t n = A.rows();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      A.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return n == 0 ? Int(1) : sign * A(n - 1, n - 1);
}

} // namespace lcah
