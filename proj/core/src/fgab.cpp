#include "lcah/fgab.hpp"

#include <sstream>

namespace lcah {

FgAbGroup::FgAbGroup(std::size_t rank, std::vector<Int> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      fail(ErrorKind::InvalidMorphism, "invariant factors must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      fail(ErrorKind::InvalidMorphism,
           "invariant factors must form a divisibility chain");
  }
}

Int FgAbGroup::order_of(std::size_t i) const {
  return i < rank_ ? Int(0) : torsion_.at(i - rank_);
}

Int FgAbGroup::order() const {
  if (!is_finite())
    internal_error("order of an infinite group");
  Int o = 1;
  for (const auto &d : torsion_)
    o *= d;
  return o;
}

IntMatrix FgAbGroup::relations() const {
  IntMatrix R(generators(), torsion_.size());
  for (std::size_t j = 0; j < torsion_.size(); ++j)
    R(rank_ + j, j) = torsion_[j];
  return R;
}

std::string FgAbGroup::to_string() const {
  std::vector<std::string> parts;
  if (rank_ == 1)
    parts.push_back("Z");
  else if (rank_ > 1)
    parts.push_back("Z^" + std::to_string(rank_));
  for (const auto &d : torsion_)
    parts.push_back("Z/" + d.get_str());
  if (parts.empty())
    return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i)
    s += (i ? " + " : "") + parts[i];
  return s;
}

IntMatrix reduce_element(const FgAbGroup &g, const IntMatrix &v) {
  IntMatrix r = v;
  for (std::size_t i = g.rank(); i < g.generators(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      r(i, j) = mod_floor(r(i, j), g.order_of(i));
  return r;
}

FgAbMorphism::FgAbMorphism(FgAbGroup source, FgAbGroup target, IntMatrix m)
    : source_(std::move(source)), target_(std::move(target)),
      matrix_(std::move(m)) {
  if (matrix_.rows() != target_.generators() ||
      matrix_.cols() != source_.generators())
    fail(ErrorKind::ShapeMismatch, "morphism matrix does not match groups");
  matrix_ = reduce_element(target_, matrix_);
  for (std::size_t j = source_.rank(); j < source_.generators(); ++j) {
    Int d = source_.order_of(j);
    for (std::size_t i = 0; i < target_.generators(); ++i) {
      Int e = target_.order_of(i);
      bool ok = e == 0 ? matrix_(i, j) == 0 : (d * matrix_(i, j)) % e == 0;
      if (!ok)
        fail(ErrorKind::InvalidMorphism,
             "matrix does not respect the relations of the source");
    }
  }
}

FgAbMorphism FgAbMorphism::identity(const FgAbGroup &g) {
  return FgAbMorphism(g, g, IntMatrix::identity(g.generators()));
}

FgAbMorphism FgAbMorphism::zero(const FgAbGroup &s, const FgAbGroup &t) {
  return FgAbMorphism(s, t, IntMatrix(t.generators(), s.generators()));
}

FgAbMorphism FgAbMorphism::operator+(const FgAbMorphism &o) const {
  if (!(source_ == o.source_ && target_ == o.target_))
    fail(ErrorKind::ShapeMismatch, "sum of morphisms with different types");
  return FgAbMorphism(source_, target_, matrix_ + o.matrix_);
}

FgAbMorphism FgAbMorphism::operator-() const {
  return FgAbMorphism(source_, target_, -matrix_);
}

FgAbMorphism compose(const FgAbMorphism &g, const FgAbMorphism &f) {
  if (!(f.target() == g.source()))
    fail(ErrorKind::ShapeMismatch, "composition of incompatible morphisms");
  return FgAbMorphism(f.source(), g.target(), g.matrix() * f.matrix());
}

IntMatrix unimodular_inverse(const IntMatrix &U) {
  const std::size_t n = U.rows();
  RatMatrix A = U.map([](const Int &x) { return Rat(x); });
  RatMatrix B = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && A(p, k) == 0)
      ++p;
    if (p == n)
      internal_error("singular matrix in unimodular_inverse");
    A.swap_rows(k, p);
    B.swap_rows(k, p);
    Rat piv = A(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      A(k, j) /= piv;
      B(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || A(i, k) == 0)
        continue;
      Rat f = A(i, k);
      A.add_row(i, k, -f);
      B.add_row(i, k, -f);
    }
  }
  return B.map([](const Rat &q) {
    if (q.get_den() != 1)
      internal_error("matrix is not unimodular");
    return Int(q.get_num());
  });
}

LatticeQuotient quotient_lattice(std::size_t n, const IntMatrix &relations) {
  SmithForm s = relations.cols() == 0
                    ? SmithForm{IntMatrix::identity(n), IntMatrix(n, 0),
                                IntMatrix::identity(0), 0}
                    : smith_normal_form(relations);
  IntMatrix Uinv = unimodular_inverse(s.U);
  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<Int> torsion;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= s.rank)
      free_idx.push_back(i);
    else if (s.D(i, i) > 1) {
      tors_idx.push_back(i);
      torsion.push_back(s.D(i, i));
    }
  }
  LatticeQuotient q;
  q.group = FgAbGroup(free_idx.size(), torsion);
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());
  q.projection = IntMatrix(order.size(), n);
  for (std::size_t r = 0; r < order.size(); ++r)
    for (std::size_t j = 0; j < n; ++j)
      q.projection(r, j) = s.U(order[r], j);
  q.projection = reduce_element(q.group, q.projection);
  q.section = Uinv.select_columns(order);
  return q;
}

Canonicalized canonicalize_orders(const std::vector<Int> &orders) {
  const std::size_t n = orders.size();
  IntMatrix R(n, n);
  for (std::size_t i = 0; i < n; ++i)
    R(i, i) = orders[i];
  LatticeQuotient q = quotient_lattice(n, R);
  return {q.group, q.projection, q.section};
}

FgKernel fg_kernel(const FgAbMorphism &f) {
  const FgAbGroup &S = f.source(), &T = f.target();
  const std::size_t n = S.generators();
  IntMatrix Rt = T.relations();
  IntMatrix big = IntMatrix::hstack(f.matrix(), -Rt);
  IntMatrix ker = big.rows() == 0 ? IntMatrix::identity(big.cols())
                                  : integer_kernel(big);
  IntMatrix B = hermite_column_basis(ker.block(0, 0, n, ker.cols()));
  // Relations of the source, written in the basis B.
  IntMatrix Rs = S.relations();
  IntMatrix C(B.cols(), Rs.cols());
  for (std::size_t j = 0; j < Rs.cols(); ++j) {
    auto c = integer_solve(B, Rs.column(j));
    if (!c)
      internal_error("source relations not contained in the kernel lattice");
    C.set_block(0, j, *c);
  }
  LatticeQuotient q = quotient_lattice(B.cols(), C);
  IntMatrix emb = B * q.section;
  return {q.group, FgAbMorphism(q.group, S, emb)};
}

FgCokernel fg_cokernel(const FgAbMorphism &f) {
  const FgAbGroup &T = f.target();
  IntMatrix rel = IntMatrix::hstack(T.relations(), f.matrix());
  LatticeQuotient q = quotient_lattice(T.generators(), rel);
  return {q.group, FgAbMorphism(T, q.group, q.projection)};
}

bool fg_is_isomorphic(const FgAbGroup &g, const FgAbGroup &h) { return g == h; }

bool fg_is_injective(const FgAbMorphism &f) {
  return fg_kernel(f).group.is_trivial();
}

bool fg_is_surjective(const FgAbMorphism &f) {
  return fg_cokernel(f).group.is_trivial();
}

} // namespace lcah
