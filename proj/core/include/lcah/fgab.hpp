#pragma once

#include <string>
#include <vector>

#include "lcah/intlinalg.hpp"

namespace lcah {

// Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_i | d_{i+1}, d_i >= 2.
// Canonical generators: the free ones first, then the torsion ones.
class FgAbGroup {
public:
  FgAbGroup() = default;
  explicit FgAbGroup(std::size_t rank, std::vector<Int> torsion = {});

  std::size_t rank() const { return rank_; }
  const std::vector<Int> &torsion() const { return torsion_; }
  std::size_t generators() const { return rank_ + torsion_.size(); }
  // Order of generator i; 0 for free generators.
  Int order_of(std::size_t i) const;
  bool is_finite() const { return rank_ == 0; }
  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  Int order() const; // valid for finite groups
  // Column-per-relation matrix of the canonical presentation.
  IntMatrix relations() const;

  bool operator==(const FgAbGroup &) const = default;
  std::string to_string() const;

private:
  std::size_t rank_ = 0;
  std::vector<Int> torsion_;
};

class FgAbMorphism {
public:
  FgAbMorphism() = default;
  FgAbMorphism(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static FgAbMorphism identity(const FgAbGroup &g);
  static FgAbMorphism zero(const FgAbGroup &s, const FgAbGroup &t);

  const FgAbGroup &source() const { return source_; }
  const FgAbGroup &target() const { return target_; }
  const IntMatrix &matrix() const { return matrix_; }

  FgAbMorphism operator+(const FgAbMorphism &o) const;
  FgAbMorphism operator-() const;
  bool operator==(const FgAbMorphism &) const = default;
  bool is_zero() const { return matrix_.is_zero(); }

private:
  FgAbGroup source_, target_;
  IntMatrix matrix_;
};

FgAbMorphism compose(const FgAbMorphism &g, const FgAbMorphism &f);

// Reduce a coordinate vector (column) into canonical range for the group.
IntMatrix reduce_element(const FgAbGroup &g, const IntMatrix &v);

// Z^n / (column span of R) in canonical form.
struct LatticeQuotient {
  FgAbGroup group;
  IntMatrix projection; // generators x n: coordinates of the image of e_i
  IntMatrix section;    // n x generators: a preimage of each generator
};
LatticeQuotient quotient_lattice(std::size_t n, const IntMatrix &relations);

// Canonical form of ⊕ Z/orders[i] (0 meaning Z), with mutually inverse maps.
struct Canonicalized {
  FgAbGroup group;
  IntMatrix to_canonical;   // canonical coords = to_canonical * old coords
  IntMatrix from_canonical; // old coords = from_canonical * canonical coords
};
Canonicalized canonicalize_orders(const std::vector<Int> &orders);

IntMatrix unimodular_inverse(const IntMatrix &U);

struct FgKernel {
  FgAbGroup group;
  FgAbMorphism embedding;
};
struct FgCokernel {
  FgAbGroup group;
  FgAbMorphism projection;
};

FgKernel fg_kernel(const FgAbMorphism &f);
FgCokernel fg_cokernel(const FgAbMorphism &f);
bool fg_is_isomorphic(const FgAbGroup &g, const FgAbGroup &h);
bool fg_is_injective(const FgAbMorphism &f);
bool fg_is_surjective(const FgAbMorphism &f);

} // namespace lcah
