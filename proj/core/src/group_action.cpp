#include "fqav/group_action.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fqav {

// ---------------------------------------------------------------- AffineMap

AffineMap AffineMap::identity(std::size_t rank) {
  return {IntMatrix::identity(rank), TorsionPoint::zero(rank)};
}

AffineMap AffineMap::translation_by(const TorsionPoint& a) {
  return {IntMatrix::identity(a.size()), a};
}

bool AffineMap::is_identity() const {
  return has_trivial_holonomy() && translation.is_zero();
}

bool AffineMap::has_trivial_holonomy() const {
  return linear == IntMatrix::identity(linear.rows());
}

AffineMap AffineMap::inverse() const {
  const IntMatrix inv = to_integer(fqav::inverse(to_rational(linear)));
  return {inv, -(inv * translation)};
}

AffineMap operator*(const AffineMap& lhs, const AffineMap& rhs) {
  return {lhs.linear * rhs.linear, lhs.translation + lhs.linear * rhs.translation};
}

namespace {

// Every finite order in GL_m(Z) divides the lcm of the d with phi(d) <= m.
std::size_t finite_order_bound(std::size_t m) {
  std::size_t bound = 1;
  for (unsigned d = 1; d <= 4 * m * m + 2; ++d)
    if (euler_phi(d) <= m) bound = std::lcm(bound, std::size_t{d});
  return bound;
}

}  // namespace

std::size_t multiplicative_order(const IntMatrix& m, std::size_t cap) {
  if (!m.square()) throw MathError("order of a non-square matrix");
  const IntMatrix id = IntMatrix::identity(m.rows());
  const Rational det = determinant(to_rational(m));
  if (det != 1 && det != -1) throw MathError("holonomy is not invertible over Z");
  const std::size_t limit = std::min(cap, finite_order_bound(m.rows()));
  IntMatrix power = m;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (power == id) return k;
    power = power * m;
  }
  throw MathError("holonomy does not have finite order");
}

std::vector<AffineMap> close_affine_group(const std::vector<AffineMap>& gens,
                                          std::size_t rank, std::size_t cap) {
  for (const auto& g : gens)
    if (g.rank() != rank || g.translation.size() != rank)
      throw MathError("generator has wrong rank");
  std::vector<AffineMap> elements{AffineMap::identity(rank)};
  std::set<AffineMap> seen(elements.begin(), elements.end());
  std::vector<AffineMap> layer = elements;
  while (!layer.empty()) {
    std::vector<AffineMap> next;
    for (const auto& x : layer)
      for (const auto& g : gens) {
        AffineMap y = x * g;
        if (!seen.insert(y).second) continue;
        if (seen.size() > cap) throw MathError("group order exceeds cap");
        next.push_back(std::move(y));
      }
    std::sort(next.begin(), next.end());
    elements.insert(elements.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return elements;
}

// --------------------------------------------------------- SublatticeAction

SublatticeAction::SublatticeAction(IntMatrix embedding, IntMatrix seed_form,
                                   std::vector<AffineMap> elements)
    : embedding_(std::move(embedding)),
      seed_form_(std::move(seed_form)),
      elements_(std::move(elements)) {
  if (elements_.empty() || !elements_.front().is_identity())
    throw MathError("group elements must start with the identity");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].rank() != rank()) throw MathError("group element has wrong rank");
    index_.emplace(elements_[i], i);
  }
  if (index_.size() != elements_.size()) throw MathError("repeated group element");
}

SublatticeAction SublatticeAction::close(IntMatrix embedding, IntMatrix seed_form,
                                         const std::vector<AffineMap>& gens,
                                         std::size_t cap) {
  const std::size_t r = embedding.rows();
  return SublatticeAction(std::move(embedding), std::move(seed_form),
                          close_affine_group(gens, r, cap));
}

std::optional<std::size_t> SublatticeAction::index_of(const AffineMap& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<IntMatrix> SublatticeAction::holonomy() const {
  std::vector<IntMatrix> out;
  std::set<IntMatrix> seen;
  for (const auto& g : elements_)
    if (seen.insert(g.linear).second) out.push_back(g.linear);
  return out;
}

SublatticeAction SublatticeAction::subgroup(
    const std::vector<std::size_t>& generator_indices) const {
  std::vector<AffineMap> gens;
  for (std::size_t i : generator_indices) gens.push_back(elements_.at(i));
  return close(embedding_, seed_form_, gens, elements_.size());
}

// ------------------------------------------------------- FiniteGroupAction

AffineMap AffineAutomorphism::to_map(const AbelianVarietyModel& a) const {
  if (translation.size() != a.lattice_rank())
    throw MathError("translation has wrong number of coordinates");
  return {rational_rep(a, holonomy), translation};
}

FiniteGroupAction::FiniteGroupAction(AbelianVarietyModel variety,
                                     std::vector<AffineAutomorphism> generators,
                                     SublatticeAction action)
    : variety_(std::move(variety)),
      generators_(std::move(generators)),
      action_(std::move(action)) {
  std::set<IntMatrix> seen;
  for (const auto& g : action_.elements()) {
    AffineAutomorphism e{EndoBlockMatrix::from_rational_rep(variety_, g.linear),
                         g.translation};
    if (seen.insert(g.linear).second) holonomy_.push_back(e.holonomy);
    elements_.push_back(std::move(e));
  }
}

std::size_t FiniteGroupAction::holonomy_exponent() const {
  std::size_t out = 1;
  for (const auto& phi : holonomy_)
    out = std::lcm(out, multiplicative_order(rational_rep(variety_, phi)));
  return out;
}

FiniteGroupAction close_group(const AbelianVarietyModel& a,
                              const std::vector<AffineAutomorphism>& gens,
                              std::size_t cap) {
  if (cap < 1) throw MathError("group cap must be positive");
  std::vector<AffineMap> maps;
  for (const auto& g : gens) maps.push_back(g.to_map(a));
  const std::size_t m = a.lattice_rank();
  return FiniteGroupAction(
      a, gens,
      SublatticeAction::close(IntMatrix::identity(m), a.product_polarization(), maps, cap));
}

// ------------------------------------------------------------ fixed loci

FixedLocus fixed_locus(const AffineMap& g) {
  const IntMatrix m = IntMatrix::identity(g.rank()) - g.linear;
  const AffineSolutionSet sol = solve_affine_mod_lattice(m, g.translation);
  FixedLocus out;
  if (!sol.nonempty) return out;
  out.empty = false;
  out.dim = static_cast<int>(sol.kernel.rank() / 2);
  for (const auto& rep : sol.representatives) out.components.emplace_back(sol.kernel, rep);
  return out;
}

FixedLocus fixed_locus(const AbelianVarietyModel& a, const AffineAutomorphism& g) {
  return fixed_locus(g.to_map(a));
}

Stabilizer pointwise_stabilizer(const SubtorusTranslate& t, const SublatticeAction& g) {
  Stabilizer out;
  const IntMatrix id = IntMatrix::identity(g.rank());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const AffineMap& h = g.element(i);
    if (!(t.lattice().basis() * (id - h.linear).transpose()).is_zero()) continue;
    if (h(t.translate()) != t.translate()) continue;
    out.subgroup.push_back(i);
  }
  out.e = out.subgroup.size();
  return out;
}

// --------------------------------------------------------- translations

FiniteGroupAction conjugate_by_translation(const FiniteGroupAction& g,
                                           const TorsionPoint& p) {
  const AbelianVarietyModel& a = g.variety();
  auto conj = [&](const AffineMap& h) -> AffineMap {
    return {h.linear, h.translation + h.linear * p - p};
  };
  std::vector<AffineMap> elements;
  for (const auto& h : g.lattice_action().elements()) elements.push_back(conj(h));
  std::vector<AffineAutomorphism> gens;
  for (const auto& h : g.generators())
    gens.push_back({h.holonomy, conj(h.to_map(a)).translation});
  return FiniteGroupAction(a, gens,
                           SublatticeAction(g.lattice_action().embedding(),
                                            g.lattice_action().seed_form(), elements));
}

NormalizedTranslations normalize_translations(const FiniteGroupAction& g) {
  const std::size_t m = g.variety().lattice_rank();
  RatVector sum(m, Rational(0));
  const Rational n(static_cast<unsigned long>(g.order()));
  for (const auto& h : g.elements())
    for (std::size_t i = 0; i < m; ++i) sum[i] += h.translation[i] / n;
  TorsionPoint p(std::move(sum));
  return {p, conjugate_by_translation(g, p)};
}

// ------------------------------------------------------------------ ages

unsigned natural_conductor(const FiniteGroupAction& g) {
  return static_cast<unsigned>(std::lcm(std::size_t{12}, g.holonomy_exponent()));
}

Rational age(const AbelianVarietyModel& a, const AffineAutomorphism& g,
             const FieldPtr& field) {
  const IntMatrix rho = rational_rep(a, g.holonomy);
  const std::size_t order = multiplicative_order(rho);
  if (field->conductor() % order != 0) throw MathError("field too small");
  const CycloMatrix analytic = analytic_rep(a, g.holonomy, field);
  Rational out = 0;
  for (std::size_t d = 2; d <= order; ++d) {
    if (order % d != 0) continue;
    for (std::size_t k = 1; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      const CycloNumber zeta =
          CycloNumber::root_of_unity(field, static_cast<unsigned>(d), static_cast<long>(k));
      const std::size_t mult = eigen_multiplicity(analytic, zeta);
      if (mult == 0) continue;
      out += Rational(static_cast<unsigned long>(mult * k), static_cast<unsigned long>(d));
    }
  }
  out.canonicalize();
  return out;
}

PolarizedMultiplication descend_multiplication(const SublatticeAction& g) {
  Integer l = 1;
  for (const auto& h : g.elements()) l = lcm(l, h.translation.order());
  PolarizedMultiplication out{l + 1, true};
  for (const auto& h : g.elements()) {
    const AffineMap multiply{out.m * IntMatrix::identity(h.rank()),
                             TorsionPoint::zero(h.rank())};
    if (multiply * h != h * multiply) out.commutes = false;
  }
  if (!out.commutes) throw CertificateFailure("[m] does not commute with the group");
  return out;
}

}  // namespace fqav
