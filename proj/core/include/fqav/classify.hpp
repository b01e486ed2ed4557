#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fqav/abelian_variety.hpp"
#include "fqav/group_action.hpp"

namespace fqav {

struct DecompositionResult;

// Codimension-one part of the branch data of A -> A/G.
struct RamificationData {
  std::vector<SubtorusTranslate> components;     // sorted, distinct
  std::vector<std::size_t> indices;              // ramification index e per component
  std::vector<std::vector<std::size_t>> orbits;  // G-orbits of components
  std::vector<Rational> boundary_coeffs;         // 1 - 1/e per orbit
  std::size_t intersection_dim = 0;              // dim of the common subtorus
};

RamificationData ramification_data(const SublatticeAction& g);
inline RamificationData ramification_data(const FiniteGroupAction& g) {
  return ramification_data(g.lattice_action());
}

// Every nontrivial element fixes at most a codimension-two locus.
bool is_quasietale(const SublatticeAction& g);
inline bool is_quasietale(const FiniteGroupAction& g) {
  return is_quasietale(g.lattice_action());
}

struct AnticanonicalKappa {
  long kappa = 0;
  bool q_fano = false;
};

AnticanonicalKappa kappa_anticanonical(const RamificationData& r, std::size_t dim);
AnticanonicalKappa kappa_anticanonical(const SublatticeAction& g);
inline AnticanonicalKappa kappa_anticanonical(const FiniteGroupAction& g) {
  return kappa_anticanonical(g.lattice_action());
}

struct ReidTaiResult {
  bool holds = true;
  std::optional<std::size_t> witness;  // element index
  std::optional<Rational> witness_age;
};

// Age >= 1 for every nontrivial element with a fixed point. The differential
// of t_a o phi at any fixed point is phi itself, so the check is per element.
ReidTaiResult reid_tai(const FiniteGroupAction& g, const FieldPtr& field);

// q(X) = dim of the holonomy-invariant tangent vectors.
std::size_t irregularity(const SublatticeAction& g);
inline std::size_t irregularity(const FiniteGroupAction& g) {
  return irregularity(g.lattice_action());
}

// A flag that is only emitted when a theorem decides it.
struct TheoremFlag {
  std::optional<bool> value;
  std::string provenance;
};

struct ClassificationReport {
  std::size_t n = 0;
  std::size_t group_order = 0;
  unsigned conductor = 12;
  bool quasietale = false;
  long kappa_anticanonical = 0;
  bool q_fano = false;
  bool fano_type = false;
  bool q_abelian = false;
  std::size_t q_X = 0;
  std::size_t q_circle = 0;
  ReidTaiResult reid_tai;
  TheoremFlag uniruled;
  TheoremFlag canonical;
  TheoremFlag kappa_zero;
  Integer polarized_endo_m;
  // kappa(-K_X) + q_circle > n; allowed, but worth recording.
  bool kappa_gap_noteworthy = false;
};

// `conductor` overrides the natural cyclotomic field Q(zeta_m). Cross-checks
// between independent routes throw CertificateFailure on disagreement.
ClassificationReport classification_report(const FiniteGroupAction& g,
                                           std::optional<unsigned> conductor = std::nullopt);
ClassificationReport classification_report(const FiniteGroupAction& g,
                                           const DecompositionResult& decomposition,
                                           std::optional<unsigned> conductor = std::nullopt);

// Cyclotomic field for the ages of g, honouring an override.
FieldPtr age_field(const FiniteGroupAction& g, std::optional<unsigned> conductor);

}  // namespace fqav
