#include "lcah/pga.hpp"

namespace lcah {

PgaGroup::PgaGroup(FgAbGroup d, ElcaGroup ambient, ElcaMorphism iota)
    : d_(std::move(d)), ambient_(std::move(ambient)), iota_(std::move(iota)) {
  if (!(iota_.source() == ElcaGroup::discrete(d_)) || !(iota_.target() == ambient_))
    fail(ErrorKind::ShapeMismatch, "embedding does not match the group and ambient");
  Subobject k = kernel(iota_);
  if (!k.group.is_trivial())
    throw NotMonicError("embedding is not injective: kernel " + k.group.to_string(), k);
}

Completion completion(const PgaGroup &p) {
  Subobject s = closure_of_image(p.iota());
  return {s.group, lift_through_embedding(p.iota(), s.embedding), s.embedding};
}

PgaClassification classify_pga(const PgaGroup &p) {
  PgaClassification c;
  c.precompact = completion(p).group.is_compact();
  return c;
}

PgaMorphism::PgaMorphism(PgaGroup source, PgaGroup target, FgAbMorphism f)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)) {
  if (!(f_.source() == source_.group()) || !(f_.target() == target_.group()))
    fail(ErrorKind::ShapeMismatch, "map does not match the underlying groups");
  Completion c1 = completion(source_), c2 = completion(target_);
  // The closure of the graph is the graph of the extension exactly when the
  // first projection stays an isomorphism.
  DirectSum ds = direct_sum(c1.group, c2.group);
  ElcaMorphism graph = pair(c1.dense_map, compose(c2.dense_map, ElcaMorphism::from_fgab(f_)));
  Subobject g = closure_of_image(graph);
  ElcaMorphism p1 = compose(ds.pr1, g.embedding);
  if (!is_isomorphism(p1))
    fail(ErrorKind::InvalidMorphism,
         "map is not continuous for the subspace topologies");
  completed_ = compose(compose(ds.pr2, g.embedding), inverse(p1));
}

PgaMorphism identity_morphism(const PgaGroup &p) {
  return PgaMorphism(p, p, FgAbMorphism::identity(p.group()));
}

PgaMorphism compose(const PgaMorphism &g, const PgaMorphism &f) {
  return PgaMorphism(f.source(), g.target(), compose(g.discrete_map(), f.discrete_map()));
}

HeartObject theta(const PgaGroup &p) { return HeartObject(completion(p).dense_map); }

HeartMorphism theta(const PgaMorphism &f) {
  return make_heart_morphism(theta(f.source()), theta(f.target()),
                             ElcaMorphism::from_fgab(f.discrete_map()),
                             f.completed_map());
}

PgaGroup theta_inverse(const HeartObject &o) {
  if (!o.upper().is_discrete())
    fail(ErrorKind::UpperNotDiscrete,
         "upper group " + o.upper().to_string() + " is not discrete");
  return PgaGroup(o.upper().discrete_part(), o.lower(), o.differential());
}

BicartesianCertificate theta_round_trip(const HeartObject &o) {
  if (!o.is_ghost())
    fail(ErrorKind::NotGhost, "object is not a ghost: its differential is not epic");
  PgaGroup p = theta_inverse(o);
  Completion c = completion(p);
  HeartObject t(c.dense_map);
  BicartesianCertificate cert{
      {{SquareData(t.differential(), o.differential(),
                   ElcaMorphism::identity(o.upper()), c.embedding),
        StepDirection::Forward}}};
  check_certificate(cert, t, o);
  return cert;
}

const char *link_kind_name(LinkKind k) {
  return k == LinkKind::AdmissibleEpic ? "admissible-epic" : "admissible-monic";
}

StrictnessReport analyse_strictness(const PgaMorphism &f) {
  StrictnessReport r;
  const FgAbMorphism &fd = f.discrete_map();
  FgKernel k = fg_kernel(fd);
  FgCokernel q = fg_cokernel(fd);
  r.kernel = k.group;
  r.cokernel = q.group;
  Completion c1 = completion(f.source()), c2 = completion(f.target());
  ElcaMorphism kd = compose(c1.dense_map, ElcaMorphism::from_fgab(k.embedding));
  r.discrete_kernel = classify_morphism(kd).admissible_monic;
  // Completed map on the coimage.
  Subobject ck = closure_of_image(kd);
  Quotient ca = cokernel(ck.embedding);
  ElcaMorphism cm = descend_through_quotient(f.completed_map(), ca.projection);
  if (!classify_morphism(cm).admissible_monic)
    return r;
  // The image must be closed in the target: target ∩ closure(image) = image.
  Pullback pb = pullback(c2.dense_map, cm);
  ElcaMorphism qd = ElcaMorphism::from_fgab(q.projection);
  if (!compose(qd, pb.to_a).is_zero())
    return r;
  r.strict = true;
  Quotient cq = cokernel(cm);
  ElcaMorphism into = descend_through_quotient(compose(cq.projection, c2.dense_map), qd);
  r.discrete_cokernel = classify_morphism(into).admissible_monic;
  return r;
}

std::optional<LatticeIsogenyWitness> is_lattice_isogeny(const PgaMorphism &f) {
  StrictnessReport r = analyse_strictness(f);
  if (!(r.strict && r.discrete_kernel && r.discrete_cokernel))
    return std::nullopt;
  LatticeIsogenyWitness w;
  if (r.kernel.is_trivial()) {
    w.links.push_back({f, LinkKind::AdmissibleMonic, r.cokernel});
    return w;
  }
  // f = m ∘ e through the coimage A = source / kernel.
  FgKernel k = fg_kernel(f.discrete_map());
  FgCokernel kc = fg_cokernel(k.embedding);
  Completion c1 = completion(f.source());
  ElcaMorphism kd = compose(c1.dense_map, ElcaMorphism::from_fgab(k.embedding));
  Quotient ca = cokernel(kd);
  ElcaMorphism pd = ElcaMorphism::from_fgab(kc.projection);
  ElcaMorphism iota_a =
      descend_through_quotient(compose(ca.projection, c1.dense_map), pd);
  PgaGroup a(kc.group, ca.group, iota_a);
  FgAbMorphism fbar =
      descend_through_quotient(ElcaMorphism::from_fgab(f.discrete_map()), pd)
          .discrete_part();
  w.links.push_back({PgaMorphism(f.source(), a, kc.projection),
                     LinkKind::AdmissibleEpic, r.kernel});
  w.links.push_back({PgaMorphism(a, f.target(), fbar), LinkKind::AdmissibleMonic,
                     r.cokernel});
  return w;
}

void check_witness(const LatticeIsogenyWitness &w) {
  for (std::size_t i = 0; i < w.links.size(); ++i) {
    const IsogenyLink &l = w.links[i];
    auto bad = [&](const std::string &why) {
      fail(ErrorKind::InvalidCertificate, "link " + std::to_string(i) + ": " + why);
    };
    if (i > 0 && !(w.links[i - 1].map.target() == l.map.source()))
      bad("does not start where the previous link ends");
    StrictnessReport r = analyse_strictness(l.map);
    if (!r.strict)
      bad("map is not strict");
    if (l.kind == LinkKind::AdmissibleEpic) {
      if (!r.cokernel.is_trivial())
        bad("epic link is not surjective");
      if (!r.discrete_kernel || !(r.kernel == l.defect))
        bad("kernel does not match the recorded group");
    } else {
      if (!r.kernel.is_trivial())
        bad("monic link is not injective");
      if (!r.discrete_cokernel || !(r.cokernel == l.defect))
        bad("cokernel does not match the recorded group");
    }
  }
}

LatticeIsogenyWitness theta_inverse_round_trip(const PgaGroup &p) {
  PgaGroup back = theta_inverse(theta(p));
  auto w = is_lattice_isogeny(PgaMorphism(back, p, FgAbMorphism::identity(p.group())));
  if (!w)
    internal_error("round trip through theta is not a lattice isogeny");
  check_witness(*w);
  return *w;
}

PgaGroup weak_dual_dc(const PgaGroup &p) {
  if (!classify_pga(p).precompact)
    fail(ErrorKind::NotPrecompact, "group is not precompact: its completion is " +
                                       completion(p).group.to_string());
  return theta_inverse(heart_dual(theta(p)));
}

bool completion_is_exact(const PgaSequence &s) {
  return is_short_exact(s.inclusion.completed_map(), s.projection.completed_map());
}

} // namespace lcah
