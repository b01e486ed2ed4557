#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fqav/abelian_variety.hpp"
#include "fqav/cyclotomic.hpp"
#include "fqav/linalg.hpp"

namespace fqav {

inline constexpr std::size_t kDefaultGroupCap = 10000;

// x -> linear * x + translation on R^k / Z^k.
struct AffineMap {
  IntMatrix linear;
  TorsionPoint translation;

  static AffineMap identity(std::size_t rank);
  static AffineMap translation_by(const TorsionPoint& a);

  std::size_t rank() const { return linear.rows(); }
  bool is_identity() const;
  bool has_trivial_holonomy() const;
  TorsionPoint operator()(const TorsionPoint& x) const { return linear * x + translation; }
  AffineMap inverse() const;

  // (t_a o phi)(t_b o psi) = t_{a + phi(b)} o phi psi
  friend AffineMap operator*(const AffineMap& lhs, const AffineMap& rhs);
  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
  friend bool operator!=(const AffineMap& a, const AffineMap& b) { return !(a == b); }
  friend bool operator<(const AffineMap& a, const AffineMap& b) {
    if (a.linear != b.linear) return a.linear < b.linear;
    return a.translation < b.translation;
  }
};

// Smallest k >= 1 with m^k = I; throws MathError if none up to `cap`.
std::size_t multiplicative_order(const IntMatrix& m, std::size_t cap = kDefaultGroupCap);

// Breadth-first closure starting from the identity. Each new layer is sorted
// before it is appended, so the element order depends only on the generators.
// Throws MathError("group order exceeds cap").
std::vector<AffineMap> close_affine_group(const std::vector<AffineMap>& gens,
                                          std::size_t rank, std::size_t cap);

// A finite group acting affinely on the torus of a lattice C. `embedding`
// rows are a basis of C inside the lattice of the ambient abelian variety;
// `seed_form` is an alternating form on C (the restricted product
// polarization).
class SublatticeAction {
 public:
  SublatticeAction() = default;
  // `elements` must be closed under composition with the identity first.
  SublatticeAction(IntMatrix embedding, IntMatrix seed_form,
                   std::vector<AffineMap> elements);
  static SublatticeAction close(IntMatrix embedding, IntMatrix seed_form,
                                const std::vector<AffineMap>& gens,
                                std::size_t cap = kDefaultGroupCap);

  std::size_t rank() const { return embedding_.rows(); }
  std::size_t dim() const { return rank() / 2; }
  std::size_t order() const { return elements_.size(); }
  bool is_trivial() const { return elements_.size() == 1; }
  const IntMatrix& embedding() const { return embedding_; }
  const IntMatrix& seed_form() const { return seed_form_; }
  const std::vector<AffineMap>& elements() const { return elements_; }
  const AffineMap& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const AffineMap& g) const;
  // Distinct linear parts, in element order.
  std::vector<IntMatrix> holonomy() const;

  // Closed subgroup generated by the listed elements.
  SublatticeAction subgroup(const std::vector<std::size_t>& generator_indices) const;

 private:
  IntMatrix embedding_;
  IntMatrix seed_form_;
  std::vector<AffineMap> elements_;
  std::map<AffineMap, std::size_t> index_;
};

// g = t_a o phi with phi given in block form.
struct AffineAutomorphism {
  EndoBlockMatrix holonomy;
  TorsionPoint translation;

  AffineMap to_map(const AbelianVarietyModel& a) const;
  friend bool operator==(const AffineAutomorphism&, const AffineAutomorphism&) = default;
};

class FiniteGroupAction {
 public:
  FiniteGroupAction(AbelianVarietyModel variety, std::vector<AffineAutomorphism> generators,
                    SublatticeAction action);

  const AbelianVarietyModel& variety() const { return variety_; }
  std::size_t dim() const { return variety_.dim(); }
  const std::vector<AffineAutomorphism>& generators() const { return generators_; }
  const std::vector<AffineAutomorphism>& elements() const { return elements_; }
  const AffineAutomorphism& element(std::size_t i) const { return elements_[i]; }
  std::size_t order() const { return elements_.size(); }
  // G_0, distinct holonomy parts in element order.
  const std::vector<EndoBlockMatrix>& holonomy_group() const { return holonomy_; }
  // The same group as lattice-level affine maps, element-for-element.
  const SublatticeAction& lattice_action() const { return action_; }
  // lcm of the holonomy orders.
  std::size_t holonomy_exponent() const;

 private:
  AbelianVarietyModel variety_;
  std::vector<AffineAutomorphism> generators_;
  std::vector<AffineAutomorphism> elements_;
  std::vector<EndoBlockMatrix> holonomy_;
  SublatticeAction action_;
};

FiniteGroupAction close_group(const AbelianVarietyModel& a,
                              const std::vector<AffineAutomorphism>& gens,
                              std::size_t cap = kDefaultGroupCap);

struct FixedLocus {
  bool empty = true;
  int dim = -1;  // -1 when empty
  std::vector<SubtorusTranslate> components;
};

FixedLocus fixed_locus(const AffineMap& g);
FixedLocus fixed_locus(const AbelianVarietyModel& a, const AffineAutomorphism& g);

struct Stabilizer {
  std::vector<std::size_t> subgroup;  // element indices
  std::size_t e = 0;
};

// Elements fixing every point of T.
Stabilizer pointwise_stabilizer(const SubtorusTranslate& t, const SublatticeAction& g);

struct NormalizedTranslations {
  TorsionPoint p;
  FiniteGroupAction conjugated;  // t_p^{-1} G t_p, element-for-element
};

NormalizedTranslations normalize_translations(const FiniteGroupAction& g);
// Conjugation by the translation t_p, keeping element order.
FiniteGroupAction conjugate_by_translation(const FiniteGroupAction& g, const TorsionPoint& p);

// lcm(12, exponent of G_0).
unsigned natural_conductor(const FiniteGroupAction& g);

// Throws MathError("field too small") when the holonomy order does not divide
// the conductor.
Rational age(const AbelianVarietyModel& a, const AffineAutomorphism& g,
             const FieldPtr& field);

struct PolarizedMultiplication {
  Integer m;
  bool commutes = false;
};

// m = 1 + lcm of the orders of g(0), with [m] g = g [m] verified exactly.
PolarizedMultiplication descend_multiplication(const SublatticeAction& g);

}  // namespace fqav
