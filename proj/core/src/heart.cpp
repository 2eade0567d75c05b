#include "lcah/heart.hpp"

namespace lcah {

// ---------------------------------------------------------------- objects

HeartObject::HeartObject(ElcaMorphism x) : x_(std::move(x)) {
  Subobject k = kernel(x_);
  if (!k.group.is_trivial())
    throw NotMonicError("differential is not monic: kernel " + k.group.to_string(),
                        k);
  ghost_ = cokernel(x_).group.is_trivial();
}

HeartObject HeartObject::torsion_free(const ElcaGroup &g) {
  return HeartObject(ElcaMorphism::zero(ElcaGroup(), g));
}

bool HeartObject::is_dc() const {
  return upper().is_discrete() && lower().is_compact();
}

bool HeartObject::is_dcg() const { return upper().is_discrete(); }

HeartMorphism make_heart_morphism(const HeartObject &s, const HeartObject &t,
                                  const ElcaMorphism &upper,
                                  const ElcaMorphism &lower) {
  if (!(upper.source() == s.upper() && upper.target() == t.upper() &&
        lower.source() == s.lower() && lower.target() == t.lower()))
    fail(ErrorKind::ShapeMismatch, "levelwise maps do not match the objects");
  if (!(compose(t.differential(), upper) == compose(lower, s.differential())))
    fail(ErrorKind::NonCommuting, "levelwise maps do not commute with the differentials");
  return {s, t, upper, lower};
}

HeartMorphism compose(const HeartMorphism &g, const HeartMorphism &f) {
  return make_heart_morphism(f.source, g.target, compose(g.upper, f.upper),
                             compose(g.lower, f.lower));
}

HeartMorphism identity_morphism(const HeartObject &o) {
  return {o, o, ElcaMorphism::identity(o.upper()),
          ElcaMorphism::identity(o.lower())};
}

SquareData as_square(const HeartMorphism &m) {
  return SquareData(m.source.differential(), m.target.differential(), m.upper,
                    m.lower);
}

Decomposition decompose(const HeartObject &o) {
  Subobject s = closure_of_image(o.differential());
  HeartObject torsion(lift_through_embedding(o.differential(), s.embedding));
  Quotient q = cokernel(o.differential());
  return {torsion, q.group, s.embedding, q.projection};
}

// ----------------------------------------------------------- certificates

const char *direction_name(StepDirection d) {
  return d == StepDirection::Forward ? "forward" : "inverted";
}

void check_certificate(const BicartesianCertificate &c, const HeartObject &from,
                       const HeartObject &to) {
  ElcaMorphism current = from.differential();
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto &[sq, dir] = c.steps[i];
    auto bad = [&](const std::string &why) {
      fail(ErrorKind::InvalidCertificate,
           "square " + std::to_string(i) + ": " + why);
    };
    const ElcaMorphism &here = dir == StepDirection::Forward ? sq.top() : sq.bottom();
    const ElcaMorphism &next = dir == StepDirection::Forward ? sq.bottom() : sq.top();
    if (!(here == current))
      bad("does not start at the previous object");
    if (!(compose(sq.bottom(), sq.left()) == compose(sq.right(), sq.top())))
      bad("does not commute");
    if (!kernel(next).group.is_trivial())
      bad("row is not monic");
    if (!is_bicartesian(sq))
      bad("is not bicartesian");
    current = next;
  }
  if (!(current == to.differential()))
    fail(ErrorKind::InvalidCertificate, "chain does not end at the target object");
}

bool vertical_maps_match(const SquareData &s, bool require_finite) {
  ElcaGroup ku = kernel(s.left()).group, kv = kernel(s.right()).group;
  ElcaGroup cu = cokernel(s.left()).group, cv = cokernel(s.right()).group;
  if (!(ku == kv && cu == cv))
    return false;
  for (const ElcaGroup *g : {&ku, &cu}) {
    if (!g->is_discrete())
      return false;
    if (require_finite && g->b() != 0)
      return false;
  }
  return true;
}

BicartesianCertificate dual_certificate(const BicartesianCertificate &c) {
  BicartesianCertificate d;
  for (const auto &[sq, dir] : c.steps)
    d.steps.push_back(
        {SquareData(pontryagin_dual(sq.bottom()), pontryagin_dual(sq.top()),
                    pontryagin_dual(sq.right()), pontryagin_dual(sq.left())),
         dir == StepDirection::Forward ? StepDirection::Inverted
                                       : StepDirection::Forward});
  return d;
}

// ----------------------------------------------------------- rewriting

namespace {

struct Step {
  HeartObject next;
  CertificateStep step;
  // Vertical maps: old -> new for forward steps, new -> old for inverted.
  ElcaMorphism upper_map, lower_map;
};

// Quotient both levels by a subgroup of the upper group that the
// differential embeds as a closed subgroup.
Step quotient_step(const HeartObject &o, const ElcaMorphism &sub) {
  Quotient qu = cokernel(sub);
  Quotient ql = cokernel(compose(o.differential(), sub));
  ElcaMorphism nx = descend_through_quotient(
      compose(ql.projection, o.differential()), qu.projection);
  HeartObject next(nx);
  return {next,
          {SquareData(o.differential(), nx, qu.projection, ql.projection),
           StepDirection::Forward},
          qu.projection, ql.projection};
}

// Restrict to the preimage of a closed subgroup of the lower group.
Step restrict_step(const HeartObject &o, const Subobject &lower_sub) {
  Quotient q = cokernel(lower_sub.embedding);
  Subobject k = kernel(compose(q.projection, o.differential()));
  ElcaMorphism nx = lift_through_embedding(
      compose(o.differential(), k.embedding), lower_sub.embedding);
  HeartObject next(nx);
  return {next,
          {SquareData(nx, o.differential(), k.embedding, lower_sub.embedding),
           StepDirection::Inverted},
          k.embedding, lower_sub.embedding};
}

// Greedy choice of columns of m (in index order) up to full row rank.
std::vector<std::size_t> independent_columns(const ScalarMatrix &m) {
  std::vector<std::size_t> chosen;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::vector<std::size_t> trial = chosen;
    trial.push_back(j);
    std::size_t tr = rank(m.select_columns(trial));
    if (tr > r) {
      chosen = trial;
      r = tr;
    }
  }
  return chosen;
}

// Splits off a vector subspace of the upper group that the differential
// maps properly onto a vector subspace of the lower group. Afterwards the
// remaining vector part of the upper group lands in the compact part.
std::optional<Step> split_vector_step(const HeartObject &o) {
  const ElcaGroup &U = o.upper(), &L = o.lower();
  if (U.a() == 0 || L.a() == 0)
    return std::nullopt;
  ScalarMatrix rho = o.differential().A().block(0, 0, L.a(), U.a());
  std::vector<std::size_t> cols = independent_columns(rho);
  if (cols.empty())
    return std::nullopt;
  ElcaGroup V = ElcaGroup::R(cols.size());
  ScalarMatrix A(U.real_dim(), cols.size());
  for (std::size_t r = 0; r < cols.size(); ++r)
    A(cols[r], r) = Scalar(1);
  return quotient_step(o, ElcaMorphism(V, U, A, ScalarMatrix(U.real_dim(), 0),
                                       IntMatrix(U.int_dim(), 0)));
}

// Quotients by free generators of the upper group whose images project to
// a lattice in the vector part of the lower group.
std::optional<Step> lattice_step(const HeartObject &o) {
  const ElcaGroup &U = o.upper(), &L = o.lower();
  if (L.a() == 0)
    return std::nullopt;
  ScalarMatrix proj = o.differential().B().block(0, 0, L.a(), U.b());
  std::vector<std::size_t> cols = independent_columns(proj);
  if (cols.size() != L.a())
    internal_error("lattice step: image is not dense in the vector part");
  ElcaGroup E = ElcaGroup::Z(cols.size());
  IntMatrix C(U.int_dim(), cols.size());
  for (std::size_t r = 0; r < cols.size(); ++r)
    C(cols[r], r) = 1;
  return quotient_step(o, ElcaMorphism(E, U, ScalarMatrix(U.real_dim(), 0),
                                       ScalarMatrix(U.real_dim(), cols.size()), C));
}

} // namespace

DcForm normalize_dc(const HeartObject &o) {
  if (!o.is_ghost())
    fail(ErrorKind::NotGhost, "object is not a ghost: its differential is not epic");
  if (o.is_dc())
    return {o, {}};
  BicartesianCertificate cert;
  HeartObject cur = o;
  auto apply = [&](const std::optional<Step> &s) {
    if (!s)
      return;
    cert.steps.push_back(s->step);
    cur = s->next;
  };
  // Compact part of the upper group.
  if (cur.upper().c() > 0 || cur.upper().k() > 0)
    apply(quotient_step(
        cur, coordinate_subgroup(cur.upper(), {false, false, true, true}).embedding));
  // Discrete free part of the lower group.
  if (cur.lower().b() > 0)
    apply(restrict_step(cur, coordinate_subgroup(cur.lower(), {true, false, true, true})));
  apply(split_vector_step(cur));
  apply(lattice_step(cur));
  if (cur.upper().a() > 0) {
    // The remaining vector part of the upper group is handled on the dual.
    HeartObject d = heart_dual(cur);
    BicartesianCertificate inner;
    std::optional<Step> s = lattice_step(d);
    if (s) {
      inner.steps.push_back(s->step);
      d = s->next;
    }
    for (const auto &step : dual_certificate(inner).steps)
      cert.steps.push_back(step);
    cur = heart_dual(d);
  }
  if (!cur.is_dc())
    internal_error("normalization did not reach a discrete-compact object");
  return {cur, cert};
}

HeartObject heart_dual(const HeartObject &o) {
  if (o.is_ghost())
    return HeartObject(pontryagin_dual(o.differential()));
  if (o.upper().is_trivial())
    return HeartObject::torsion_free(o.lower().dual());
  if (classify_morphism(o.differential()).admissible_monic)
    return HeartObject::torsion_free(cokernel(o.differential()).group.dual());
  fail(ErrorKind::NotRepresentable,
       "dual of an object with both a ghost and a classical part is not "
       "representable by a single complex");
}

// ------------------------------------------------------------------ roofs

Roof make_roof(const HeartMorphism &left, const HeartMorphism &right) {
  BicartesianCertificate c{{{as_square(left), StepDirection::Forward}}};
  return make_roof(left, c, right);
}

Roof make_roof(const HeartMorphism &left, const BicartesianCertificate &cert,
               const HeartMorphism &right) {
  Roof r{left.source, left, right, cert};
  check_roof(r);
  return r;
}

void check_roof(const Roof &r) {
  if (!(r.left.source == r.apex) || !(r.right.source == r.apex))
    fail(ErrorKind::InvalidCertificate, "roof legs do not start at the apex");
  make_heart_morphism(r.left.source, r.left.target, r.left.upper, r.left.lower);
  make_heart_morphism(r.right.source, r.right.target, r.right.upper, r.right.lower);
  check_certificate(r.certificate, r.apex, r.left.target);
  if (!is_bicartesian(as_square(r.left)))
    fail(ErrorKind::InvalidCertificate, "left leg is not bicartesian");
}

Roof identity_roof(const HeartObject &o) {
  return make_roof(identity_morphism(o), identity_morphism(o));
}

NormalizedRoof normalize_roof(const Roof &r) {
  if (!r.left.target.is_dc() || !r.right.target.is_dc())
    fail(ErrorKind::InvalidMorphism, "roof endpoints must be discrete-compact");
  check_roof(r);
  HeartObject apex = r.apex;
  ElcaMorphism lu = r.left.upper, ll = r.left.lower;
  ElcaMorphism ru = r.right.upper, rl = r.right.lower;
  BicartesianCertificate chain;
  auto advance = [&](const Step &s) {
    chain.steps.push_back(s.step);
    if (s.step.direction == StepDirection::Forward) {
      lu = descend_through_quotient(lu, s.upper_map);
      ll = descend_through_quotient(ll, s.lower_map);
      ru = descend_through_quotient(ru, s.upper_map);
      rl = descend_through_quotient(rl, s.lower_map);
    } else {
      lu = compose(lu, s.upper_map);
      ll = compose(ll, s.lower_map);
      ru = compose(ru, s.upper_map);
      rl = compose(rl, s.lower_map);
    }
    apex = s.next;
  };
  // Vector part of the apex upper group: killed by both legs.
  if (apex.upper().a() > 0)
    advance(quotient_step(
        apex, coordinate_subgroup(apex.upper(), {true, false, false, false}).embedding));
  // Compact part: shrink to the finite-index subgroup killed by both legs.
  if (apex.upper().c() > 0 || apex.upper().k() > 0) {
    Subobject cpt = coordinate_subgroup(apex.upper(), {false, false, true, true});
    Subobject dead = kernel(compose(pair(lu, ru), cpt.embedding));
    if (!dead.group.is_trivial())
      advance(quotient_step(apex, compose(cpt.embedding, dead.embedding)));
  }
  // Discrete free part of the apex lower group.
  if (apex.lower().b() > 0)
    advance(restrict_step(
        apex, coordinate_subgroup(apex.lower(), {true, false, true, true})));
  HeartMorphism left = make_heart_morphism(apex, r.left.target, lu, ll);
  HeartMorphism right = make_heart_morphism(apex, r.right.target, ru, rl);
  return {make_roof(left, right), chain};
}

std::optional<ElcaMorphism> find_null_homotopy(const Roof &r) {
  const ElcaGroup &src = r.apex.lower(), &dst = r.right.target.upper();
  if (!dst.is_discrete())
    fail(ErrorKind::UpperNotDiscrete, "target upper group is not discrete");
  if (src.b() != 0)
    fail(ErrorKind::InvalidMorphism, "roof apex is not normalized");
  // A homotopy vanishes on the connected part, so only the finite-to-finite
  // block is free: entry (i,j) ranges over multiples of e_i / gcd(d_j, e_i).
  struct Slot {
    std::size_t row, col;
    Int step, count;
  };
  std::vector<Slot> slots;
  Int total = 1;
  for (std::size_t i = 0; i < dst.k(); ++i)
    for (std::size_t j = 0; j < src.k(); ++j) {
      const Int &d = src.torsion()[j], &e = dst.torsion()[i];
      Int g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
      if (g > 1) {
        slots.push_back({dst.b() + i, src.b() + j, e / g, g});
        total *= g;
      }
    }
  if (total > Int(static_cast<unsigned long>(kHomotopySearchLimit)))
    fail(ErrorKind::OrderBoundExceeded,
         "homotopy search space has " + total.get_str() + " candidates");
  std::vector<Int> digits(slots.size(), 0);
  while (true) {
    IntMatrix C(dst.int_dim(), src.int_dim());
    for (std::size_t s = 0; s < slots.size(); ++s)
      C(slots[s].row, slots[s].col) = slots[s].step * digits[s];
    ElcaMorphism delta(src, dst, ScalarMatrix(0, src.real_dim()),
                       ScalarMatrix(0, src.int_dim()), C);
    if (compose(delta, r.apex.differential()) == r.right.upper &&
        compose(r.right.target.differential(), delta) == r.right.lower)
      return delta;
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      if (++digits[s] < slots[s].count)
        break;
      digits[s] = 0;
    }
    if (s == slots.size())
      return std::nullopt;
  }
}

bool roof_is_zero(const Roof &r) {
  if (r.right.upper.is_zero() && r.right.lower.is_zero())
    return true;
  if (r.apex.upper().is_discrete() && r.apex.lower().b() == 0)
    return find_null_homotopy(r).has_value();
  return find_null_homotopy(normalize_roof(r).roof).has_value();
}

bool roof_equal(const Roof &r1, const Roof &r2) {
  if (!(r1.left.target == r2.left.target) || !(r1.right.target == r2.right.target))
    fail(ErrorKind::ShapeMismatch, "roofs have different endpoints");
  Pullback pu = pullback(r1.left.upper, r2.left.upper);
  Pullback pl = pullback(r1.left.lower, r2.left.lower);
  ElcaMorphism into = pair(compose(r1.apex.differential(), pu.to_a),
                           compose(r2.apex.differential(), pu.to_b));
  ElcaMorphism p = lift_through_embedding(into, pair(pl.to_a, pl.to_b));
  std::optional<HeartObject> apex;
  try {
    apex = HeartObject(p);
  } catch (const NotMonicError &e) {
    fail(ErrorKind::RefinementNotGhost,
         std::string("common refinement is not monic: ") + e.what());
  }
  if (!apex->is_ghost())
    fail(ErrorKind::RefinementNotGhost, "common refinement is not a ghost");
  HeartMorphism p1 = make_heart_morphism(*apex, r1.apex, pu.to_a, pl.to_a);
  HeartMorphism p2 = make_heart_morphism(*apex, r2.apex, pu.to_b, pl.to_b);
  HeartMorphism left = compose(r1.left, p1);
  HeartMorphism a = compose(r1.right, p1), b = compose(r2.right, p2);
  HeartMorphism diff = make_heart_morphism(*apex, r1.right.target,
                                           a.upper - b.upper, a.lower - b.lower);
  if (!is_bicartesian(as_square(left)))
    fail(ErrorKind::RefinementNotGhost,
         "common refinement is not a quasi-isomorphism");
  return roof_is_zero(make_roof(left, diff));
}

// --------------------------------------------------- maps into classical

namespace {

enum class EntryKind { Real, Circle, Integer, Finite };

struct HomEntry {
  std::size_t row, col;
  EntryKind kind;
  Int order; // finite entries only
  Rat unit;  // value of the generator of this coordinate
};

// Coordinates of Hom(X, Y): one per structurally nonzero entry of the full
// matrix, grouped R, Z, T, F as in any elementary group.
struct HomCoordinates {
  std::vector<HomEntry> real, integer; // real = R then T; integer = Z then F
  ElcaGroup group;
  IntMatrix to_canonical, from_canonical; // on the finite coordinates
  std::size_t free_count = 0;             // Z-type integer coordinates
};

HomCoordinates hom_coordinates(const ElcaGroup &X, const ElcaGroup &Y) {
  auto kind_of = [](const ElcaGroup &g, std::size_t i) {
    if (i < g.a())
      return 'R';
    if (i < g.a() + g.b())
      return 'Z';
    if (i < g.a() + g.b() + g.c())
      return 'T';
    return 'F';
  };
  auto order_of = [](const ElcaGroup &g, std::size_t i) {
    return g.torsion()[i - g.a() - g.b() - g.c()];
  };
  std::vector<HomEntry> R, T, Z, F;
  for (std::size_t i = 0; i < Y.coordinates(); ++i)
    for (std::size_t j = 0; j < X.coordinates(); ++j) {
      char r = kind_of(Y, i), c = kind_of(X, j);
      if (r == 'R' && (c == 'R' || c == 'Z'))
        R.push_back({i, j, EntryKind::Real, 0, 1});
      else if (r == 'T' && c == 'R')
        R.push_back({i, j, EntryKind::Real, 0, 1});
      else if (r == 'T' && c == 'Z')
        T.push_back({i, j, EntryKind::Circle, 0, 1});
      else if ((r == 'Z' && c == 'Z') || (r == 'T' && c == 'T'))
        Z.push_back({i, j, EntryKind::Integer, 0, 1});
      else if (r == 'F' && c == 'Z')
        F.push_back({i, j, EntryKind::Finite, order_of(Y, i), 1});
      else if (r == 'T' && c == 'F') {
        Int d = order_of(X, j);
        F.push_back({i, j, EntryKind::Finite, d, Rat(Int(1), d)});
      } else if (r == 'F' && c == 'F') {
        Int d = order_of(X, j), e = order_of(Y, i), g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
        if (g > 1)
          F.push_back({i, j, EntryKind::Finite, g, Rat(e / g)});
      }
    }
  HomCoordinates h;
  h.real = R;
  h.real.insert(h.real.end(), T.begin(), T.end());
  h.integer = Z;
  h.integer.insert(h.integer.end(), F.begin(), F.end());
  h.free_count = Z.size();
  std::vector<Int> orders;
  for (const auto &e : F)
    orders.push_back(e.order);
  Canonicalized can = canonicalize_orders(orders);
  h.group = ElcaGroup(R.size(), Z.size(), T.size(), can.group.torsion());
  h.to_canonical = can.to_canonical;
  h.from_canonical = can.from_canonical;
  return h;
}

IntMatrix block_diag_identity(std::size_t n, const IntMatrix &m) {
  IntMatrix out(n + m.rows(), n + m.cols());
  for (std::size_t i = 0; i < n; ++i)
    out(i, i) = 1;
  out.set_block(n, n, m);
  return out;
}

} // namespace

HomSolution maps_to_torsion_free(const HeartObject &ghost, const ElcaGroup &y) {
  if (!ghost.is_ghost())
    fail(ErrorKind::NotGhost, "object is not a ghost");
  const ElcaGroup &X = ghost.lower(), &Xp = ghost.upper();
  HomCoordinates H = hom_coordinates(X, y), Hp = hom_coordinates(Xp, y);
  ScalarMatrix xfull = ghost.differential().full();
  const std::size_t nr = H.real.size(), ni = H.integer.size();
  ScalarMatrix A(Hp.real.size(), nr), Braw(Hp.real.size(), ni);
  IntMatrix Craw(Hp.integer.size(), ni);
  // Images of the coordinate generators under h |-> h∘x, on unreduced lifts.
  auto image = [&](const HomEntry &e) {
    ScalarMatrix h(y.coordinates(), X.coordinates());
    h(e.row, e.col) = Scalar(e.unit);
    return h * xfull;
  };
  auto read_int = [&](const HomEntry &t, const Scalar &v) {
    if (!v.is_rational())
      internal_error("symbolic value in a discrete Hom coordinate");
    Rat q = v.to_rational() / t.unit;
    if (q.get_den() != 1)
      internal_error("Hom coordinate is not integral");
    return Int(q.get_num());
  };
  for (std::size_t s = 0; s < nr + ni; ++s) {
    const HomEntry &e = s < nr ? H.real[s] : H.integer[s - nr];
    ScalarMatrix m = image(e);
    for (std::size_t t = 0; t < Hp.real.size(); ++t) {
      const Scalar &v = m(Hp.real[t].row, Hp.real[t].col);
      if (s < nr)
        A(t, s) = v;
      else
        Braw(t, s - nr) = v;
    }
    for (std::size_t t = 0; t < Hp.integer.size(); ++t) {
      Int v = read_int(Hp.integer[t], m(Hp.integer[t].row, Hp.integer[t].col));
      if (s < nr) {
        if (v != 0)
          internal_error("continuous coordinate maps to a discrete one");
      } else {
        Craw(t, s - nr) = v;
      }
    }
  }
  IntMatrix cols = block_diag_identity(H.free_count, H.from_canonical);
  IntMatrix rows = block_diag_identity(Hp.free_count, Hp.to_canonical);
  ElcaMorphism pre(H.group, Hp.group, A, Braw * to_scalar(cols), rows * Craw * cols);
  return {H.group, kernel(pre).group};
}

} // namespace lcah
