#pragma once

#include <optional>
#include <vector>

#include "lcah/heart.hpp"

namespace lcah {

// A finitely generated group D with the subspace topology from an injective
// map into an elementary ambient group.
class PgaGroup {
public:
  PgaGroup() = default;
  PgaGroup(FgAbGroup d, ElcaGroup ambient, ElcaMorphism iota);

  const FgAbGroup &group() const { return d_; }
  const ElcaGroup &ambient() const { return ambient_; }
  const ElcaMorphism &iota() const { return iota_; }
  bool operator==(const PgaGroup &) const = default;

private:
  FgAbGroup d_;
  ElcaGroup ambient_;
  ElcaMorphism iota_;
};

struct Completion {
  ElcaGroup group;
  ElcaMorphism dense_map;  // discrete D -> completion
  ElcaMorphism embedding;  // completion ↪ ambient
};
Completion completion(const PgaGroup &p);

struct PgaClassification {
  bool precompact = false;
  bool locally_precompact = true;
  bool precompactly_generated = true;
};
PgaClassification classify_pga(const PgaGroup &p);

// A homomorphism of the underlying groups together with its continuous
// extension between completions. Construction fails if f is not continuous.
class PgaMorphism {
public:
  PgaMorphism() = default;
  PgaMorphism(PgaGroup source, PgaGroup target, FgAbMorphism f);

  const PgaGroup &source() const { return source_; }
  const PgaGroup &target() const { return target_; }
  const FgAbMorphism &discrete_map() const { return f_; }
  // Between the completions of source and target.
  const ElcaMorphism &completed_map() const { return completed_; }
  bool operator==(const PgaMorphism &) const = default;

private:
  PgaGroup source_, target_;
  FgAbMorphism f_;
  ElcaMorphism completed_;
};

PgaMorphism identity_morphism(const PgaGroup &p);
PgaMorphism compose(const PgaMorphism &g, const PgaMorphism &f);

HeartObject theta(const PgaGroup &p);
HeartMorphism theta(const PgaMorphism &f);
PgaGroup theta_inverse(const HeartObject &o);
// Certificate from theta(theta_inverse(o)) to o, for a ghost o.
BicartesianCertificate theta_round_trip(const HeartObject &o);

enum class LinkKind { AdmissibleEpic, AdmissibleMonic };
const char *link_kind_name(LinkKind k);

struct IsogenyLink {
  PgaMorphism map;
  LinkKind kind;
  FgAbGroup defect; // kernel of an epic link, cokernel of a monic one
  bool operator==(const IsogenyLink &) const = default;
};

struct LatticeIsogenyWitness {
  std::vector<IsogenyLink> links;
  bool operator==(const LatticeIsogenyWitness &) const = default;
};

struct StrictnessReport {
  bool strict = false;
  bool discrete_kernel = false;
  bool discrete_cokernel = false;
  FgAbGroup kernel, cokernel;
};
StrictnessReport analyse_strictness(const PgaMorphism &f);

std::optional<LatticeIsogenyWitness> is_lattice_isogeny(const PgaMorphism &f);
// Throws InvalidCertificate if a link does not check out.
void check_witness(const LatticeIsogenyWitness &w);
// Witness from theta_inverse(theta(p)) back to p.
LatticeIsogenyWitness theta_inverse_round_trip(const PgaGroup &p);

PgaGroup weak_dual_dc(const PgaGroup &p);

struct PgaSequence {
  PgaMorphism inclusion, projection;
};
// Completion of a short exact sequence is short exact.
bool completion_is_exact(const PgaSequence &s);

} // namespace lcah
