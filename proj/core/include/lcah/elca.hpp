#pragma once

#include <string>
#include <vector>

#include "lcah/fgab.hpp"
#include "lcah/scalar_linalg.hpp"

namespace lcah {

// R^a ⊕ Z^b ⊕ T^c ⊕ F with F given by invariant factors.
//
// Elements are handled through a cover V = R^(a+c) ⊕ Z^(b+k): real
// coordinates (R then T) and integer coordinates (Z then F), modulo the
// lattice Z^c on the T coordinates and diag(d) on the F coordinates.
class ElcaGroup {
public:
  ElcaGroup() = default;
  ElcaGroup(std::size_t a, std::size_t b, std::size_t c,
            std::vector<Int> torsion = {});

  static ElcaGroup discrete(const FgAbGroup &g);
  static ElcaGroup R(std::size_t n = 1) { return {n, 0, 0}; }
  static ElcaGroup Z(std::size_t n = 1) { return {0, n, 0}; }
  static ElcaGroup T(std::size_t n = 1) { return {0, 0, n}; }
  static ElcaGroup finite(std::vector<Int> torsion) {
    return {0, 0, 0, std::move(torsion)};
  }

  std::size_t a() const { return a_; }
  std::size_t b() const { return b_; }
  std::size_t c() const { return c_; }
  std::size_t k() const { return torsion_.size(); }
  const std::vector<Int> &torsion() const { return torsion_; }
  std::size_t real_dim() const { return a_ + c_; }
  std::size_t int_dim() const { return b_ + torsion_.size(); }
  std::size_t coordinates() const { return real_dim() + int_dim(); }

  bool is_trivial() const { return coordinates() == 0; }
  bool is_compact() const { return a_ == 0 && b_ == 0; }
  bool is_discrete() const { return a_ == 0 && c_ == 0; }
  bool is_connected() const { return b_ == 0 && torsion_.empty(); }
  bool is_vector_free() const { return a_ == 0; }
  // The underlying abstract group of a discrete group.
  FgAbGroup discrete_part() const;

  ElcaGroup dual() const { return {a_, c_, b_, torsion_}; }
  bool operator==(const ElcaGroup &) const = default;
  std::string to_string() const;

private:
  std::size_t a_ = 0, b_ = 0, c_ = 0;
  std::vector<Int> torsion_;
};

// Named blocks of a morphism (rows index target coordinates):
//   RR a'×a, ZR a'×b, ZZ b'×b, RT c'×a, ZT c'×b, TT c'×c,
//   ZF k'×b, FT c'×k, FF k'×k.
struct MorphismBlocks {
  ScalarMatrix RR, ZR, RT, ZT;
  IntMatrix ZZ, TT, ZF, FF;
  RatMatrix FT;
};

class ElcaMorphism {
public:
  ElcaMorphism() = default;
  // Lifted form: real part A (real×real), mixed part B (real×int) and
  // integer part C (int×int). Validates and canonicalizes.
  ElcaMorphism(ElcaGroup source, ElcaGroup target, ScalarMatrix A,
               ScalarMatrix B, IntMatrix C);

  static ElcaMorphism from_blocks(const ElcaGroup &source,
                                  const ElcaGroup &target,
                                  const MorphismBlocks &blocks);
  // Full matrix: rows are target coordinates R,Z,T,F; columns source ones.
  static ElcaMorphism from_full(const ElcaGroup &source,
                                const ElcaGroup &target,
                                const ScalarMatrix &full);
  static ElcaMorphism identity(const ElcaGroup &g);
  static ElcaMorphism zero(const ElcaGroup &s, const ElcaGroup &t);
  static ElcaMorphism from_fgab(const FgAbMorphism &f);

  const ElcaGroup &source() const { return source_; }
  const ElcaGroup &target() const { return target_; }
  const ScalarMatrix &A() const { return A_; }
  const ScalarMatrix &B() const { return B_; }
  const IntMatrix &C() const { return C_; }

  MorphismBlocks blocks() const;
  ScalarMatrix full() const;
  // For morphisms between discrete groups.
  FgAbMorphism discrete_part() const;

  bool is_zero() const;
  ElcaMorphism operator+(const ElcaMorphism &o) const;
  ElcaMorphism operator-(const ElcaMorphism &o) const;
  ElcaMorphism operator-() const;
  bool operator==(const ElcaMorphism &) const = default;

  std::string to_string(const SymbolTable &t) const;

private:
  ElcaGroup source_, target_;
  ScalarMatrix A_, B_;
  IntMatrix C_;
};

ElcaMorphism compose(const ElcaMorphism &g, const ElcaMorphism &f);
ElcaGroup pontryagin_dual(const ElcaGroup &g);
ElcaMorphism pontryagin_dual(const ElcaMorphism &f);

struct Subobject {
  ElcaGroup group;
  ElcaMorphism embedding;
};
struct Quotient {
  ElcaGroup group;
  ElcaMorphism projection;
};

Subobject kernel(const ElcaMorphism &f);
Quotient cokernel(const ElcaMorphism &f);
Subobject closure_of_image(const ElcaMorphism &f);
Quotient coimage(const ElcaMorphism &f);

struct MorphismClassification {
  bool monic = false, epic = false, admissible = false;
  bool admissible_monic = false, admissible_epic = false;
  bool operator==(const MorphismClassification &) const = default;
};
MorphismClassification classify_morphism(const ElcaMorphism &f);

// f = monic ∘ epic with epic an admissible epic onto the image closure.
struct Factorization {
  ElcaMorphism epic, monic;
};
Factorization image_factorization(const ElcaMorphism &f);
bool validate_factorization(const ElcaMorphism &f, const Factorization &fac);

bool is_isomorphism(const ElcaMorphism &f);
// The unique g with embedding ∘ g = f (f must land in the closed subgroup).
ElcaMorphism lift_through_embedding(const ElcaMorphism &f,
                                    const ElcaMorphism &embedding);
// The unique g with g ∘ projection = f (f must vanish on the kernel).
ElcaMorphism descend_through_quotient(const ElcaMorphism &f,
                                      const ElcaMorphism &projection);
ElcaMorphism inverse(const ElcaMorphism &iso);

struct DirectSum {
  ElcaGroup group;
  ElcaMorphism inj1, inj2, pr1, pr2;
};
DirectSum direct_sum(const ElcaGroup &g1, const ElcaGroup &g2);
ElcaMorphism pair(const ElcaMorphism &f, const ElcaMorphism &g);
ElcaMorphism copair(const ElcaMorphism &f, const ElcaMorphism &g);

// Coordinate subgroups, e.g. the compact part T^c ⊕ F.
struct CoordinateMask {
  bool R = false, Z = false, T = false, F = false;
};
Subobject coordinate_subgroup(const ElcaGroup &g, CoordinateMask keep);
Quotient coordinate_projection(const ElcaGroup &g, CoordinateMask keep);

struct Pullback {
  ElcaGroup group;
  ElcaMorphism to_a, to_b;
};
Pullback pullback(const ElcaMorphism &f, const ElcaMorphism &g);
struct Pushout {
  ElcaGroup group;
  ElcaMorphism from_a, from_b;
};
Pushout pushout(const ElcaMorphism &f, const ElcaMorphism &g);

// f top (X'→X), g bottom (Y'→Y), u left (X'→Y'), v right (X→Y).
class SquareData {
public:
  SquareData(ElcaMorphism top, ElcaMorphism bottom, ElcaMorphism left,
             ElcaMorphism right);
  const ElcaMorphism &top() const { return top_; }
  const ElcaMorphism &bottom() const { return bottom_; }
  const ElcaMorphism &left() const { return left_; }
  const ElcaMorphism &right() const { return right_; }
  bool operator==(const SquareData &) const = default;

private:
  ElcaMorphism top_, bottom_, left_, right_;
};

bool is_bicartesian(const SquareData &s);

// Exactness of A --f--> B --g--> C as a short exact sequence.
bool is_short_exact(const ElcaMorphism &f, const ElcaMorphism &g);

} // namespace lcah
