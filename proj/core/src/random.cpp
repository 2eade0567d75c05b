#include "lcah/random.hpp"

namespace lcah {

long RandomSource::uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(engine_);
}

bool RandomSource::chance(double p) {
  return std::bernoulli_distribution(p)(engine_);
}

Rat RandomSource::rational(long max_num, long max_den) {
  Rat r{Int(uniform(-max_num, max_num)), Int(uniform(1, max_den))};
  r.canonicalize();
  return r;
}

Scalar RandomSource::symbolic(long max_coeff, long max_den) {
  Scalar s(rational(max_den, max_den));
  if (!symbols_)
    return s;
  for (std::uint32_t i = 1; i < symbols_->size(); ++i)
    s += Scalar(Int(uniform(-max_coeff, max_coeff))) * Scalar::symbol(*symbols_, i);
  return s;
}

IntMatrix RandomSource::int_matrix(std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = uniform(-bound, bound);
  return m;
}

FgAbGroup RandomSource::fg_group(const RandomBounds &b) {
  std::size_t rank = uniform(0, b.max_rank);
  std::size_t k = uniform(0, b.max_factors);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < k; ++i)
    orders.push_back(uniform(2, b.max_order));
  return FgAbGroup(rank, canonicalize_orders(orders).group.torsion());
}

FgAbMorphism RandomSource::fg_morphism(const FgAbGroup &s, const FgAbGroup &t) {
  IntMatrix m(t.generators(), s.generators());
  for (std::size_t j = 0; j < s.generators(); ++j) {
    Int d = s.order_of(j);
    for (std::size_t i = 0; i < t.generators(); ++i) {
      Int e = t.order_of(i);
      if (d == 0) {
        m(i, j) = e == 0 ? Int(uniform(-4, 4)) : Int(uniform(0, e.get_si() - 1));
      } else if (e != 0) {
        // Multiples of e / gcd(d, e) are exactly the admissible values.
        Int g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
        Int step = e / g;
        m(i, j) = step * uniform(0, g.get_si() - 1);
      }
    }
  }
  return FgAbMorphism(s, t, m);
}

ElcaGroup RandomSource::group(const RandomBounds &b) {
  std::size_t a = uniform(0, b.max_rank), z = uniform(0, b.max_rank),
              c = uniform(0, b.max_rank), k = uniform(0, b.max_factors);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < k; ++i)
    orders.push_back(uniform(2, b.max_order));
  return ElcaGroup(a, z, c, canonicalize_orders(orders).group.torsion());
}

ElcaMorphism RandomSource::morphism(const ElcaGroup &s, const ElcaGroup &t,
                                    const RandomBounds &b) {
  MorphismBlocks m;
  const long E = b.max_entry, Q = b.max_den;
  auto rat_block = [&](std::size_t r, std::size_t c) {
    ScalarMatrix x(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        x(i, j) = Scalar(rational(E, Q));
    return x;
  };
  m.RR = rat_block(t.a(), s.a());
  m.ZR = rat_block(t.a(), s.b());
  m.RT = rat_block(t.c(), s.a());
  m.ZT = ScalarMatrix(t.c(), s.b());
  for (std::size_t i = 0; i < t.c(); ++i)
    for (std::size_t j = 0; j < s.b(); ++j)
      m.ZT(i, j) = chance(b.symbolic_rate) ? symbolic(2, Q) : Scalar(rational(Q, Q));
  m.ZZ = int_matrix(t.b(), s.b(), E);
  m.TT = int_matrix(t.c(), s.c(), E);
  m.ZF = IntMatrix(t.k(), s.b());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (std::size_t j = 0; j < s.b(); ++j)
      m.ZF(i, j) = uniform(0, t.torsion()[i].get_si() - 1);
  m.FT = RatMatrix(t.c(), s.k());
  for (std::size_t i = 0; i < t.c(); ++i)
    for (std::size_t j = 0; j < s.k(); ++j) {
      Rat r{Int(uniform(0, s.torsion()[j].get_si() - 1)), s.torsion()[j]};
      r.canonicalize();
      m.FT(i, j) = r;
    }
  m.FF = IntMatrix(t.k(), s.k());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (std::size_t j = 0; j < s.k(); ++j) {
      const Int &d = s.torsion()[j], &e = t.torsion()[i];
      Int g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
      m.FF(i, j) = (e / g) * uniform(0, g.get_si() - 1);
    }
  return ElcaMorphism::from_blocks(s, t, m);
}

} // namespace lcah
