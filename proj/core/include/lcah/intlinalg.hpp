#pragma once

#include <optional>

#include "lcah/matrix.hpp"
#include "lcah/scalar.hpp"

namespace lcah {

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

struct SmithForm {
  IntMatrix U, D, V; // U * M * V == D
  std::size_t rank = 0;
};

// Pivot rule: smallest nonzero absolute value, ties by lowest row then column.
SmithForm smith_normal_form(const IntMatrix &M);

// Canonical lower echelon basis of the lattice spanned by the columns of B.
IntMatrix hermite_column_basis(const IntMatrix &B);

// Basis (columns, Hermite form) of {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix &M);

// Some integer x with M x = b, if one exists (free coordinates set to zero).
std::optional<IntMatrix> integer_solve(const IntMatrix &M, const IntMatrix &b);

Int determinant(const IntMatrix &M);

// Floor-division helpers on integers.
Int floor_div(const Int &a, const Int &b);
Int mod_floor(const Int &a, const Int &b); // result in [0, |b|)

} // namespace lcah
