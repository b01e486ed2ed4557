#include "fqav/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fqav/decompose.hpp"

namespace fqav {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

RamificationData ramification_data(const SublatticeAction& g) {
  const std::size_t n = g.dim();
  std::set<SubtorusTranslate> found;
  for (std::size_t i = 1; i < g.order(); ++i) {
    const FixedLocus fl = fixed_locus(g.element(i));
    if (fl.empty || fl.dim + 1 != static_cast<int>(n)) continue;
    found.insert(fl.components.begin(), fl.components.end());
  }

  RamificationData out;
  out.components.assign(found.begin(), found.end());
  for (const auto& t : out.components) {
    const std::size_t e = pointwise_stabilizer(t, g).e;
    if (e < 2) throw CertificateFailure("ramification component with trivial inertia");
    out.indices.push_back(e);
  }

  std::vector<std::size_t> parent(out.components.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < out.components.size(); ++i)
    for (const auto& h : g.elements()) {
      const SubtorusTranslate image = out.components[i].transformed(h.linear, h.translation);
      const auto it = std::lower_bound(out.components.begin(), out.components.end(), image);
      if (it == out.components.end() || *it != image)
        throw CertificateFailure("ramification locus is not group-invariant");
      const std::size_t j = static_cast<std::size_t>(it - out.components.begin());
      parent[find_root(parent, i)] = find_root(parent, j);
    }
  std::vector<std::vector<std::size_t>> by_root(out.components.size());
  for (std::size_t i = 0; i < out.components.size(); ++i)
    by_root[find_root(parent, i)].push_back(i);
  for (auto& orbit : by_root)
    if (!orbit.empty()) out.orbits.push_back(std::move(orbit));
  std::sort(out.orbits.begin(), out.orbits.end());

  for (const auto& orbit : out.orbits) {
    const std::size_t e = out.indices[orbit.front()];
    for (std::size_t i : orbit)
      if (out.indices[i] != e)
        throw CertificateFailure("ramification index varies along an orbit");
    Rational coeff = 1 - Rational(1, static_cast<unsigned long>(e));
    coeff.canonicalize();
    out.boundary_coeffs.push_back(coeff);
  }

  Lattice common = Lattice::full(g.rank());
  for (const auto& t : out.components) common = intersect_lattices(common, t.lattice());
  out.intersection_dim = common.rank() / 2;
  return out;
}

bool is_quasietale(const SublatticeAction& g) {
  const int n = static_cast<int>(g.dim());
  for (std::size_t i = 1; i < g.order(); ++i) {
    const FixedLocus fl = fixed_locus(g.element(i));
    if (!fl.empty && fl.dim > n - 2) return false;
  }
  return true;
}

AnticanonicalKappa kappa_anticanonical(const RamificationData& r, std::size_t dim) {
  AnticanonicalKappa out;
  out.kappa = static_cast<long>(dim) - static_cast<long>(r.intersection_dim);
  out.q_fano = out.kappa == static_cast<long>(dim);
  return out;
}

AnticanonicalKappa kappa_anticanonical(const SublatticeAction& g) {
  return kappa_anticanonical(ramification_data(g), g.dim());
}

ReidTaiResult reid_tai(const FiniteGroupAction& g, const FieldPtr& field) {
  ReidTaiResult out;
  const AbelianVarietyModel& a = g.variety();
  for (std::size_t i = 1; i < g.order(); ++i) {
    const AffineMap& h = g.lattice_action().element(i);
    if (h.has_trivial_holonomy()) continue;
    if (fixed_locus(h).empty) continue;
    const Rational value = age(a, g.element(i), field);
    if (value < 1) {
      out.holds = false;
      out.witness = i;
      out.witness_age = value;
      return out;
    }
  }
  return out;
}

std::size_t irregularity(const SublatticeAction& g) {
  std::vector<IntMatrix> shifted;
  const IntMatrix id = IntMatrix::identity(g.rank());
  for (const auto& phi : g.holonomy()) shifted.push_back(id - phi);
  return common_kernel(shifted, g.rank()).rank() / 2;
}

FieldPtr age_field(const FiniteGroupAction& g, std::optional<unsigned> conductor) {
  if (!conductor) return CycloField::make(natural_conductor(g));
  if (*conductor == 0 || *conductor % 12 != 0 || *conductor % g.holonomy_exponent() != 0)
    throw MathError("field too small");
  return CycloField::make(*conductor);
}

ClassificationReport classification_report(const FiniteGroupAction& g,
                                           std::optional<unsigned> conductor) {
  return classification_report(g, decompose(g), conductor);
}

ClassificationReport classification_report(const FiniteGroupAction& g,
                                           const DecompositionResult& decomposition,
                                           std::optional<unsigned> conductor) {
  const FieldPtr field = age_field(g, conductor);
  const SublatticeAction& action = g.lattice_action();
  ClassificationReport r;
  r.n = g.dim();
  r.group_order = g.order();
  r.conductor = field->conductor();
  r.quasietale = is_quasietale(action);

  const AnticanonicalKappa k = kappa_anticanonical(action);
  r.kappa_anticanonical = k.kappa;
  r.q_fano = k.q_fano;
  r.q_X = irregularity(action);
  r.q_circle = decomposition.total_abelian_dim;
  r.q_abelian = r.quasietale;
  r.fano_type = r.q_fano;
  r.reid_tai = reid_tai(g, field);
  r.polarized_endo_m = descend_multiplication(action).m;

  const long n = static_cast<long>(r.n);
  const long q_circle = static_cast<long>(r.q_circle);
  if (r.q_abelian != (q_circle == n) ||
      r.q_abelian != (decomposition.fano_part.dim() == 0))
    throw CertificateFailure("Q-abelian criteria disagree");
  if (r.q_fano != (q_circle == 0)) throw CertificateFailure("Q-Fano criteria disagree");
  if (q_circle < 0 || q_circle > n) throw CertificateFailure("q_circle out of range");
  if (r.kappa_anticanonical < 0) throw CertificateFailure("negative anticanonical kappa");
  if (static_cast<long>(r.q_X) > q_circle) throw CertificateFailure("q(X) exceeds q_circle");
  if (r.kappa_anticanonical + q_circle < n)
    throw CertificateFailure("kappa(-K_X) + q_circle < dim X");
  r.kappa_gap_noteworthy = r.kappa_anticanonical + q_circle > n;

  if (!r.quasietale) {
    const std::string why = "ramified-quotient-is-uniruled";
    r.uniruled = {true, why};
    r.kappa_zero = {false, why};
    r.canonical = {std::nullopt, "undetermined-for-ramified-quotient"};
  } else {
    const std::string why = "reid-tai-criterion-for-quasietale-quotient";
    r.uniruled = {!r.reid_tai.holds, why};
    r.canonical = {r.reid_tai.holds, why};
    r.kappa_zero = {r.reid_tai.holds, why};
  }
  return r;
}

}  // namespace fqav
