#include "fqav/abelian_variety.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fqav {

IntMatrix EllipticFactor::tau_block() const {
  switch (cm) {
    case CmType::Zeta4:
      return IntMatrix{{0, -1}, {1, 0}};
    case CmType::Zeta6:
      return IntMatrix{{0, -1}, {1, 1}};
    case CmType::Generic:
      break;
  }
  throw MathError("not an endomorphism");
}

std::string to_string(CmType cm) {
  switch (cm) {
    case CmType::Zeta4:
      return "zeta4";
    case CmType::Zeta6:
      return "zeta6";
    case CmType::Generic:
      return "generic";
  }
  return "?";
}

AbelianVarietyModel::AbelianVarietyModel(std::vector<EllipticFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw MathError("abelian variety needs at least one factor");
}

IntMatrix AbelianVarietyModel::product_polarization() const {
  IntMatrix e(lattice_rank(), lattice_rank());
  for (std::size_t j = 0; j < dim(); ++j) {
    e(2 * j, 2 * j + 1) = 1;
    e(2 * j + 1, 2 * j) = -1;
  }
  return e;
}

// --------------------------------------------------------- EndoBlockMatrix

EndoBlockMatrix EndoBlockMatrix::identity(std::size_t n) { return scalar(n, 1); }

EndoBlockMatrix EndoBlockMatrix::scalar(std::size_t n, const Integer& k) {
  EndoBlockMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) out(j, j).c = k;
  return out;
}

void validate_endomorphism(const AbelianVarietyModel& a, const EndoBlockMatrix& phi) {
  if (phi.size() != a.dim()) throw MathError("not an endomorphism");
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const EndoBlock& b = phi(j, k);
      if (b.c == 0 && b.d == 0) continue;
      if (!a.factor(j).same_curve(a.factor(k))) throw MathError("not an endomorphism");
      if (b.d != 0 && !a.factor(j).has_cm()) throw MathError("not an endomorphism");
    }
}

IntMatrix rational_rep(const AbelianVarietyModel& a, const EndoBlockMatrix& phi) {
  validate_endomorphism(a, phi);
  const std::size_t n = a.dim();
  IntMatrix out(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const EndoBlock& b = phi(j, k);
      out(2 * j, 2 * k) += b.c;
      out(2 * j + 1, 2 * k + 1) += b.c;
      if (b.d == 0) continue;
      const IntMatrix r = a.factor(j).tau_block();
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) out(2 * j + x, 2 * k + y) += b.d * r(x, y);
    }
  return out;
}

EndoBlockMatrix EndoBlockMatrix::from_rational_rep(const AbelianVarietyModel& a,
                                                   const IntMatrix& rho) {
  const std::size_t n = a.dim();
  if (rho.rows() != 2 * n || rho.cols() != 2 * n) throw MathError("not an endomorphism");
  EndoBlockMatrix out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      out(j, k).c = rho(2 * j, 2 * k);
      out(j, k).d = rho(2 * j + 1, 2 * k);
    }
  if (rational_rep(a, out) != rho) throw MathError("not an endomorphism");
  return out;
}

CycloMatrix analytic_rep(const AbelianVarietyModel& a, const EndoBlockMatrix& phi,
                         const FieldPtr& field) {
  validate_endomorphism(a, phi);
  const std::size_t n = a.dim();
  CycloMatrix out(field, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const EndoBlock& b = phi(j, k);
      CycloNumber v(field, Rational(b.c));
      if (b.d != 0) {
        const unsigned order = a.factor(j).cm == CmType::Zeta4 ? 4 : 6;
        v = v + CycloNumber(field, Rational(b.d)) * CycloNumber::root_of_unity(field, order, 1);
      }
      out(j, k) = v;
    }
  return out;
}

EndoBlockMatrix compose(const AbelianVarietyModel& a, const EndoBlockMatrix& lhs,
                        const EndoBlockMatrix& rhs) {
  return EndoBlockMatrix::from_rational_rep(a, rational_rep(a, lhs) * rational_rep(a, rhs));
}

// ------------------------------------------------------ complex structure

std::vector<RatMatrix> complex_structure_tests(const AbelianVarietyModel& a) {
  const std::size_t m = a.lattice_rank();
  std::vector<RatMatrix> out;

  // Scaled complex structure [[-x, -(x^2+y^2)], [1, x]] for tau = x + iy.
  auto place = [&](const std::vector<std::size_t>& factors, const RatMatrix& block) {
    RatMatrix j(m, m);
    for (std::size_t f : factors)
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) j(2 * f + x, 2 * f + y) = block(x, y);
    out.push_back(std::move(j));
  };

  std::vector<std::size_t> zeta4, zeta6;
  std::map<std::string, std::vector<std::size_t>> generic;
  for (std::size_t f = 0; f < a.dim(); ++f) {
    switch (a.factor(f).cm) {
      case CmType::Zeta4:
        zeta4.push_back(f);
        break;
      case CmType::Zeta6:
        zeta6.push_back(f);
        break;
      case CmType::Generic:
        generic[a.factor(f).label].push_back(f);
        break;
    }
  }
  if (!zeta4.empty()) place(zeta4, RatMatrix{{0, -1}, {1, 0}});
  if (!zeta6.empty())
    place(zeta6, RatMatrix{{Rational(-1, 2), -1}, {1, Rational(1, 2)}});
  for (const auto& [label, factors] : generic) {
    place(factors, RatMatrix{{0, 0}, {1, 0}});   // constant part
    place(factors, RatMatrix{{-1, 0}, {0, 1}});  // coefficient of x
    place(factors, RatMatrix{{0, -1}, {0, 0}});  // coefficient of x^2 + y^2
  }
  return out;
}

bool is_abelian_subvariety(const Lattice& l, const AbelianVarietyModel& a) {
  return is_abelian_subvariety(l, a, IntMatrix::identity(l.ambient_rank()));
}

bool is_abelian_subvariety(const Lattice& l, const AbelianVarietyModel& a,
                           const IntMatrix& embedding) {
  if (l.rank() % 2 != 0) return false;
  if (l.rank() == 0) return true;
  const Lattice ambient =
      Lattice::spanned_by(a.lattice_rank(), l.basis() * embedding);
  if (ambient.rank() != l.rank()) return false;
  const RatMatrix basis = to_rational(ambient.basis());
  for (const RatMatrix& j : complex_structure_tests(a)) {
    const RatMatrix moved = basis * j.transpose();
    for (std::size_t i = 0; i < moved.rows(); ++i)
      if (!ambient.spans(moved.row(i))) return false;
  }
  return true;
}

// ------------------------------------------------------- SubtorusTranslate

SubtorusTranslate::SubtorusTranslate(Lattice lattice, const TorsionPoint& translate)
    : lattice_(std::move(lattice)) {
  if (translate.size() != lattice_.ambient_rank())
    throw MathError("translate has wrong ambient rank");
  translate_ = SubtorusChart(lattice_).canonical(translate.coords());
}

SubtorusTranslate SubtorusTranslate::transformed(const IntMatrix& m,
                                                 const TorsionPoint& a) const {
  return SubtorusTranslate(lattice_.image(m), m * translate_ + a);
}

bool SubtorusTranslate::contains(const TorsionPoint& p) const {
  return SubtorusChart(lattice_).quotient((p - translate_).coords()).is_zero();
}

SubtorusIntersection connected_intersection(const SubtorusTranslate& s1,
                                            const SubtorusTranslate& s2) {
  const Lattice& l1 = s1.lattice();
  const Lattice& l2 = s2.lattice();
  const std::size_t m = l1.ambient_rank();
  if (l2.ambient_rank() != m) throw MathError("subtori live in different ambient ranks");

  SubtorusIntersection out{intersect_lattices(l1, l2), {}};

  // Points p + B1^T s = q + B2^T t, solved on the torus of (s, t).
  const std::size_t k1 = l1.rank(), k2 = l2.rank();
  IntMatrix system(m, k1 + k2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k1; ++j) system(i, j) = l1.basis()(j, i);
    for (std::size_t j = 0; j < k2; ++j) system(i, k1 + j) = -l2.basis()(j, i);
  }
  const AffineSolutionSet sol =
      solve_affine_mod_lattice(system, s2.translate() - s1.translate());
  if (!sol.nonempty) return out;

  std::set<SubtorusTranslate> seen;
  for (const TorsionPoint& rep : sol.representatives) {
    RatVector x = s1.translate().coords();
    for (std::size_t j = 0; j < k1; ++j)
      for (std::size_t i = 0; i < m; ++i) x[i] += rep[j] * Rational(l1.basis()(j, i));
    seen.emplace(out.connected_part, TorsionPoint(std::move(x)));
  }
  out.components.assign(seen.begin(), seen.end());
  return out;
}

bool q_linear_equivalent(const SubtorusTranslate& t1, const SubtorusTranslate& t2) {
  if (t1.codim() != 1 || t2.codim() != 1)
    throw MathError("q-linear equivalence needs codimension-one subtori");
  // Translates are torsion by construction, so only the subtori matter.
  return t1.lattice() == t2.lattice();
}

DivisorKappa kappa_divisor(
    const std::vector<std::pair<Rational, SubtorusTranslate>>& components,
    std::size_t dim) {
  Lattice common = Lattice::full(2 * dim);
  for (const auto& [mult, t] : components) {
    if (mult <= 0) throw MathError("divisor multiplicities must be positive");
    if (t.ambient_dim() != dim || t.codim() != 1)
      throw MathError("divisor components must be codimension one");
    common = intersect_lattices(common, t.lattice());
  }
  DivisorKappa out;
  out.kappa = static_cast<long>(dim) - static_cast<long>(common.rank() / 2);
  out.ample = out.kappa == static_cast<long>(dim);
  return out;
}

// ------------------------------------------------------ Poincare complement

PoincareComplement poincare_complement(const Lattice& b,
                                       const std::vector<IntMatrix>& holonomy,
                                       const IntMatrix& seed) {
  const std::size_t m = b.ambient_rank();
  IntMatrix form(m, m);
  for (const IntMatrix& rho : holonomy) {
    if (!b.invariant_under(rho)) throw MathError("subvariety not invariant");
    form = form + rho.transpose() * seed * rho;
  }
  if (holonomy.empty()) form = seed;

  PoincareComplement out{Lattice(m, integer_kernel(b.basis() * form)), 0, form};
  if (out.complement.rank() + b.rank() != m)
    throw CertificateFailure("invariant form is degenerate on the subvariety");
  for (const IntMatrix& rho : holonomy)
    if (!out.complement.invariant_under(rho))
      throw CertificateFailure("complement is not invariant");
  if (intersect_lattices(b, out.complement).rank() != 0)
    throw CertificateFailure("complement meets the subvariety");
  out.ker_mu_order = direct_sum_index(b, out.complement);
  return out;
}

PoincareComplement poincare_complement(const Lattice& b,
                                       const std::vector<EndoBlockMatrix>& n0,
                                       const AbelianVarietyModel& a) {
  if (b.ambient_rank() != a.lattice_rank())
    throw MathError("lattice does not live on this abelian variety");
  std::vector<IntMatrix> reps;
  reps.reserve(n0.size());
  for (const auto& phi : n0) reps.push_back(rational_rep(a, phi));
  PoincareComplement out = poincare_complement(b, reps, a.product_polarization());
  if (!is_abelian_subvariety(out.complement, a))
    throw CertificateFailure("complement is not an abelian subvariety");
  return out;
}

}  // namespace fqav
