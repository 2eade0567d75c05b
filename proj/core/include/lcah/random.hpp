#pragma once

#include <cstdint>
#include <random>

#include "lcah/elca.hpp"

namespace lcah {

struct RandomBounds {
  std::size_t max_rank = 2;     // per R/Z/T block
  std::size_t max_factors = 1;  // invariant factors in the finite part
  long max_order = 6;
  long max_entry = 3;
  long max_den = 6;
  // Probability that a Z -> T entry carries a symbolic part.
  double symbolic_rate = 0.5;
};

// Seeded generator for test corpora. Symbolic entries only appear in the
// Z -> T block, so every generated morphism stays inside the scalar fragment.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed, const SymbolTable *symbols = nullptr)
      : engine_(seed), symbols_(symbols) {}

  std::mt19937_64 &engine() { return engine_; }
  long uniform(long lo, long hi);
  bool chance(double p);
  Rat rational(long max_num, long max_den);
  // k_1 s_1 + ... + r with small coefficients over the declared symbols.
  Scalar symbolic(long max_coeff, long max_den);

  IntMatrix int_matrix(std::size_t rows, std::size_t cols, long bound);
  FgAbGroup fg_group(const RandomBounds &b);
  FgAbMorphism fg_morphism(const FgAbGroup &s, const FgAbGroup &t);
  ElcaGroup group(const RandomBounds &b);
  ElcaMorphism morphism(const ElcaGroup &s, const ElcaGroup &t,
                        const RandomBounds &b);

private:
  std::mt19937_64 engine_;
  const SymbolTable *symbols_;
};

} // namespace lcah
