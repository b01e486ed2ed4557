#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fqav/cyclotomic.hpp"
#include "fqav/linalg.hpp"

namespace fqav {

enum class CmType { Zeta4, Zeta6, Generic };

// One elliptic curve C / (Z + Z tau). Zeta4 and Zeta6 are the curves with
// tau = i and tau = e^{2 pi i / 6}; Generic curves carry no extra
// endomorphisms, and equal labels denote the same curve.
struct EllipticFactor {
  CmType cm = CmType::Generic;
  std::string label;

  static EllipticFactor zeta4() { return {CmType::Zeta4, ""}; }
  static EllipticFactor zeta6() { return {CmType::Zeta6, ""}; }
  static EllipticFactor generic(std::string label) {
    return {CmType::Generic, std::move(label)};
  }

  bool has_cm() const { return cm != CmType::Generic; }
  bool same_curve(const EllipticFactor& other) const {
    return cm == other.cm && (cm != CmType::Generic || label == other.label);
  }
  // Multiplication by tau on the lattice coordinates (1, tau).
  IntMatrix tau_block() const;

  friend bool operator==(const EllipticFactor&, const EllipticFactor&) = default;
};

std::string to_string(CmType cm);

class AbelianVarietyModel {
 public:
  explicit AbelianVarietyModel(std::vector<EllipticFactor> factors);

  std::size_t dim() const { return factors_.size(); }
  std::size_t lattice_rank() const { return 2 * factors_.size(); }
  const std::vector<EllipticFactor>& factors() const { return factors_; }
  const EllipticFactor& factor(std::size_t j) const { return factors_[j]; }

  // Block-diagonal [[0, 1], [-1, 0]] per factor: the product polarization.
  IntMatrix product_polarization() const;

  friend bool operator==(const AbelianVarietyModel&, const AbelianVarietyModel&) = default;

 private:
  std::vector<EllipticFactor> factors_;
};

// Block (j, k) = c + d tau is a homomorphism from factor k to factor j.
struct EndoBlock {
  Integer c = 0;
  Integer d = 0;
  friend bool operator==(const EndoBlock&, const EndoBlock&) = default;
};

class EndoBlockMatrix {
 public:
  EndoBlockMatrix() = default;
  explicit EndoBlockMatrix(std::size_t n) : n_(n), blocks_(n * n) {}
  static EndoBlockMatrix identity(std::size_t n);
  static EndoBlockMatrix scalar(std::size_t n, const Integer& k);
  // Inverse of rational_rep; throws MathError("not an endomorphism") when the
  // matrix is not of block form for the model.
  static EndoBlockMatrix from_rational_rep(const AbelianVarietyModel& a,
                                           const IntMatrix& rho);

  std::size_t size() const { return n_; }
  EndoBlock& operator()(std::size_t j, std::size_t k) { return blocks_[j * n_ + k]; }
  const EndoBlock& operator()(std::size_t j, std::size_t k) const {
    return blocks_[j * n_ + k];
  }

  friend bool operator==(const EndoBlockMatrix&, const EndoBlockMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<EndoBlock> blocks_;
};

// Throws MathError("not an endomorphism") on a block constraint violation.
void validate_endomorphism(const AbelianVarietyModel& a, const EndoBlockMatrix& phi);

// The 2n x 2n action on the lattice.
IntMatrix rational_rep(const AbelianVarietyModel& a, const EndoBlockMatrix& phi);
// The n x n action on the tangent space, entries in Q(zeta_m).
CycloMatrix analytic_rep(const AbelianVarietyModel& a, const EndoBlockMatrix& phi,
                         const FieldPtr& field);
EndoBlockMatrix compose(const AbelianVarietyModel& a, const EndoBlockMatrix& lhs,
                        const EndoBlockMatrix& rhs);

// Rational matrices that a rational subspace must be stable under to be the
// tangent space of an abelian subvariety: one scaled complex structure per
// CM type present, three coefficient matrices per Generic label.
std::vector<RatMatrix> complex_structure_tests(const AbelianVarietyModel& a);

// `embedding` rows express the coordinates of `l` in the model's lattice; use
// the identity when `l` already lives there.
bool is_abelian_subvariety(const Lattice& l, const AbelianVarietyModel& a);
bool is_abelian_subvariety(const Lattice& l, const AbelianVarietyModel& a,
                           const IntMatrix& embedding);

// A translate T + x of a subtorus, with x reduced to its canonical point.
class SubtorusTranslate {
 public:
  SubtorusTranslate() = default;
  SubtorusTranslate(Lattice lattice, const TorsionPoint& translate);

  const Lattice& lattice() const { return lattice_; }
  const TorsionPoint& translate() const { return translate_; }
  std::size_t dim() const { return lattice_.rank() / 2; }
  std::size_t ambient_dim() const { return lattice_.ambient_rank() / 2; }
  std::size_t codim() const { return ambient_dim() - dim(); }

  // Image under x -> m x + a.
  SubtorusTranslate transformed(const IntMatrix& m, const TorsionPoint& a) const;
  bool contains(const TorsionPoint& p) const;

  friend bool operator==(const SubtorusTranslate& a, const SubtorusTranslate& b) {
    return a.lattice_ == b.lattice_ && a.translate_ == b.translate_;
  }
  friend bool operator!=(const SubtorusTranslate& a, const SubtorusTranslate& b) {
    return !(a == b);
  }
  friend bool operator<(const SubtorusTranslate& a, const SubtorusTranslate& b) {
    if (a.lattice_ != b.lattice_) return a.lattice_ < b.lattice_;
    return a.translate_ < b.translate_;
  }

 private:
  Lattice lattice_;
  TorsionPoint translate_;
};

struct SubtorusIntersection {
  Lattice connected_part;
  std::vector<SubtorusTranslate> components;
};

SubtorusIntersection connected_intersection(const SubtorusTranslate& s1,
                                            const SubtorusTranslate& s2);

// Throws MathError unless both are of codimension one.
bool q_linear_equivalent(const SubtorusTranslate& t1, const SubtorusTranslate& t2);

struct DivisorKappa {
  long kappa = 0;
  bool ample = false;
};

DivisorKappa kappa_divisor(
    const std::vector<std::pair<Rational, SubtorusTranslate>>& components,
    std::size_t dim);

struct PoincareComplement {
  Lattice complement;
  Integer ker_mu_order;
  IntMatrix invariant_form;
};

// Lattice-level form: `seed` is an alternating form on Z^m and `holonomy` the
// (composition-closed) linear parts that must preserve `b`.
PoincareComplement poincare_complement(const Lattice& b,
                                       const std::vector<IntMatrix>& holonomy,
                                       const IntMatrix& seed);
PoincareComplement poincare_complement(const Lattice& b,
                                       const std::vector<EndoBlockMatrix>& n0,
                                       const AbelianVarietyModel& a);

}  // namespace fqav
