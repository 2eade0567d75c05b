#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcah/elca.hpp"

namespace lcah {

// Raised when a differential has a nonzero kernel; carries that kernel.
class NotMonicError : public Error {
public:
  NotMonicError(const std::string &msg, Subobject kernel)
      : Error(ErrorKind::NotMonic, msg), kernel_(std::move(kernel)) {}
  const Subobject &kernel() const { return kernel_; }

private:
  Subobject kernel_;
};

// Two-term complex [upper --x--> lower] in degrees 1 and 0, x monic.
class HeartObject {
public:
  HeartObject() = default;
  explicit HeartObject(ElcaMorphism x);
  static HeartObject torsion_free(const ElcaGroup &g);

  const ElcaGroup &upper() const { return x_.source(); }
  const ElcaGroup &lower() const { return x_.target(); }
  const ElcaMorphism &differential() const { return x_; }

  bool is_ghost() const { return ghost_; }
  // Discrete upper group and compact (resp. compactly generated) lower group.
  bool is_dc() const;
  bool is_dcg() const;
  bool operator==(const HeartObject &o) const { return x_ == o.x_; }

private:
  ElcaMorphism x_;
  bool ghost_ = false;
};

// Levelwise map of complexes.
struct HeartMorphism {
  HeartObject source, target;
  ElcaMorphism upper, lower;
  bool operator==(const HeartMorphism &) const = default;
};
// Validates commutation with the differentials.
HeartMorphism make_heart_morphism(const HeartObject &s, const HeartObject &t,
                                  const ElcaMorphism &upper,
                                  const ElcaMorphism &lower);
HeartMorphism compose(const HeartMorphism &g, const HeartMorphism &f);
HeartMorphism identity_morphism(const HeartObject &o);
SquareData as_square(const HeartMorphism &m);

struct Decomposition {
  HeartObject torsion;      // ghost part [upper -> closure of the image]
  ElcaGroup cotorsion;      // lower / closure of the image
  ElcaMorphism gluing;      // closure ↪ lower
  ElcaMorphism projection;  // lower ↠ cotorsion
};
Decomposition decompose(const HeartObject &o);

enum class StepDirection { Forward, Inverted };
const char *direction_name(StepDirection d);

// Forward: top row is the current object, bottom the next one.
// Inverted: bottom row is the current object, top the next one.
struct CertificateStep {
  SquareData square;
  StepDirection direction;
  bool operator==(const CertificateStep &) const = default;
};

struct BicartesianCertificate {
  std::vector<CertificateStep> steps;
  bool operator==(const BicartesianCertificate &) const = default;
};

// Throws InvalidCertificate naming the first failing square.
void check_certificate(const BicartesianCertificate &c, const HeartObject &from,
                       const HeartObject &to);
// Kernels and cokernels of the vertical maps agree and are finitely
// generated discrete (finite when require_finite).
bool vertical_maps_match(const SquareData &s, bool require_finite);

BicartesianCertificate dual_certificate(const BicartesianCertificate &c);

struct DcForm {
  HeartObject object;
  BicartesianCertificate certificate;
};
DcForm normalize_dc(const HeartObject &o);

HeartObject heart_dual(const HeartObject &o);

// Apex with a left leg to the source and a right leg to the target.
struct Roof {
  HeartObject apex;
  HeartMorphism left, right;
  BicartesianCertificate certificate; // from the apex to the left endpoint
  bool operator==(const Roof &) const = default;
};
Roof make_roof(const HeartMorphism &left, const HeartMorphism &right);
Roof make_roof(const HeartMorphism &left, const BicartesianCertificate &cert,
               const HeartMorphism &right);
void check_roof(const Roof &r);
Roof identity_roof(const HeartObject &o);

struct NormalizedRoof {
  Roof roof;
  // Chain from the old apex to the new one.
  BicartesianCertificate apex_comparison;
};
NormalizedRoof normalize_roof(const Roof &r);

// Search bound for the homotopy search.
inline constexpr std::size_t kHomotopySearchLimit = 1u << 20;
std::optional<ElcaMorphism> find_null_homotopy(const Roof &r);
bool roof_is_zero(const Roof &r);
bool roof_equal(const Roof &r1, const Roof &r2);

// Levelwise maps from a ghost into [0 -> Y] are h: lower -> Y with h∘x = 0.
// Returns the group of such h as a closed subgroup of Hom(lower, Y).
struct HomSolution {
  ElcaGroup hom_group;    // Hom(lower, Y)
  ElcaGroup solutions;    // kernel of h |-> h∘x
};
HomSolution maps_to_torsion_free(const HeartObject &ghost, const ElcaGroup &y);

} // namespace lcah
