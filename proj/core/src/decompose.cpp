#include "fqav/decompose.hpp"

#include <algorithm>
#include <set>

namespace fqav {

SublatticeAction ramification_subgroup(const SublatticeAction& g) {
  const int n = static_cast<int>(g.dim());
  std::vector<std::size_t> gens;
  for (std::size_t i = 1; i < g.order(); ++i) {
    const FixedLocus fl = fixed_locus(g.element(i));
    if (!fl.empty && fl.dim == n - 1) gens.push_back(i);
  }
  SublatticeAction n_sub = g.subgroup(gens);
  for (const auto& x : g.elements()) {
    const AffineMap x_inv = x.inverse();
    for (const auto& h : n_sub.elements())
      if (!n_sub.index_of(x * h * x_inv))
        throw CertificateFailure("ramification subgroup is not normal");
  }
  return n_sub;
}

bool quasietale_outside(const SublatticeAction& g, const SublatticeAction& n) {
  const int limit = static_cast<int>(g.dim()) - 2;
  for (const auto& x : g.elements()) {
    if (n.index_of(x)) continue;
    for (const auto& h : n.elements()) {
      const FixedLocus fl = fixed_locus(h * x);
      if (!fl.empty && fl.dim > limit) return false;
    }
  }
  return true;
}

Lattice invariant_fixed_torus(const SublatticeAction& n) {
  std::vector<IntMatrix> shifted;
  const IntMatrix id = IntMatrix::identity(n.rank());
  for (const auto& phi : n.holonomy()) shifted.push_back(id - phi);
  return common_kernel(shifted, n.rank());
}

SplitAction split_action(const SublatticeAction& n, const Lattice& b, const Lattice& c) {
  const std::size_t m = n.rank();
  const std::size_t kb = b.rank(), kc = c.rank();
  if (b.ambient_rank() != m || c.ambient_rank() != m || kb + kc != m)
    throw MathError("B and C must be complementary lattices of the acting torus");

  // Columns: basis of B, then basis of C.
  RatMatrix adapted(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < kb; ++j) adapted(i, j) = b.basis()(j, i);
    for (std::size_t j = 0; j < kc; ++j) adapted(i, kb + j) = c.basis()(j, i);
  }
  const RatMatrix to_bc = inverse(adapted);
  auto split = [&](const RatVector& x) {
    const RatVector y = to_bc * x;
    return std::make_pair(RatVector(y.begin(), y.begin() + kb),
                          RatVector(y.begin() + kb, y.end()));
  };

  SplitAction out;

  // Coset representatives of Z^m / (B + C) via the Smith form of the
  // inclusion; each gives the kernel element (pi_B z, pi_C z).
  IntMatrix stacked = b.basis();
  for (std::size_t i = 0; i < kc; ++i) stacked.append_row(c.basis().row(i));
  const SmithForm f = snf(stacked);
  const IntMatrix v_inv = to_integer(inverse(to_rational(f.V)));
  std::vector<RatVector> cosets;
  {
    std::vector<Integer> digits(m, Integer(0));
    while (true) {
      RatVector z(m, Rational(0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) z[j] += Rational(digits[i] * v_inv(i, j));
      cosets.push_back(std::move(z));
      std::size_t i = 0;
      for (; i < m; ++i) {
        if (++digits[i] < f.diagonal(i)) break;
        digits[i] = 0;
      }
      if (i == m) break;
    }
  }
  out.ker_mu_order = direct_sum_index(b, c);
  if (Integer(static_cast<unsigned long>(cosets.size())) != out.ker_mu_order)
    throw CertificateFailure("kernel of the addition map has the wrong order");
  {
    std::set<TorsionPoint> ker;
    const RatMatrix b_cols = to_rational(b.basis().transpose());
    for (const auto& z : cosets) ker.insert(TorsionPoint(b_cols * split(z).first));
    out.ker_mu.assign(ker.begin(), ker.end());
    if (out.ker_mu.size() != cosets.size())
      throw CertificateFailure("kernel of the addition map has repeated points");
  }

  // phi restricted to C in C-coordinates; phi must fix B pointwise.
  auto restrict_to_c = [&](const IntMatrix& rho) {
    for (std::size_t j = 0; j < kb; ++j)
      if (rho * b.basis().row(j) != b.basis().row(j))
        throw CertificateFailure("holonomy of N does not fix B");
    IntMatrix r(kc, kc);
    for (std::size_t j = 0; j < kc; ++j) {
      const auto [yb, yc] = split(to_rational(rho * c.basis().row(j)));
      for (const auto& x : yb)
        if (x != 0) throw MathError("subvariety not invariant");
      for (std::size_t i = 0; i < kc; ++i) {
        if (yc[i].get_den() != 1) throw CertificateFailure("holonomy does not preserve C");
        r(i, j) = yc[i].get_num();
      }
    }
    return r;
  };

  std::set<std::pair<AffineMap, AffineMap>> tilde;
  std::set<AffineMap> slice;  // Ñ elements with trivial B-translation
  std::set<AffineMap> preserving;
  const SubtorusChart c_chart(c);
  for (const auto& g : n.elements()) {
    const IntMatrix rc = restrict_to_c(g.linear);
    for (const auto& z : cosets) {
      RatVector a = g.translation.coords();
      for (std::size_t i = 0; i < m; ++i) a[i] += z[i];
      auto [yb, yc] = split(a);
      AffineMap on_b{IntMatrix::identity(kb), TorsionPoint(std::move(yb))};
      AffineMap on_c{rc, TorsionPoint(std::move(yc))};
      if (on_b.translation.is_zero()) slice.insert(on_c);
      tilde.emplace(std::move(on_b), std::move(on_c));
    }
    if (const auto coords = c_chart.subtorus_coordinates(g.translation.coords()))
      preserving.insert(AffineMap{rc, *coords});
  }
  if (tilde.size() != n.order() * cosets.size())
    throw CertificateFailure("lift of N to B x C is not injective");
  out.n_tilde.assign(tilde.begin(), tilde.end());
  if (out.n_tilde.size() <= 400)
    for (const auto& [xb, xc] : out.n_tilde)
      for (const auto& [yb, yc] : out.n_tilde)
        if (!tilde.count({xb * yb, xc * yc}))
          throw CertificateFailure("lift of N to B x C is not closed");
  if (slice != preserving)
    throw CertificateFailure("restriction to C disagrees with the lifted group");

  std::vector<AffineMap> gens;
  for (const auto& h : preserving)
    if (!h.is_identity()) gens.push_back(h);
  const IntMatrix c_embedding = c.basis() * n.embedding();
  const IntMatrix c_seed = c.basis() * n.seed_form() * c.basis().transpose();
  out.n_c = SublatticeAction::close(c_embedding, c_seed, gens, n.order());
  if (out.n_c.order() != preserving.size())
    throw CertificateFailure("restriction to C is not a group");
  return out;
}

bool same_group(const SublatticeAction& a, const SublatticeAction& b) {
  if (a.embedding() != b.embedding() || a.order() != b.order()) return false;
  for (const auto& g : a.elements())
    if (!b.index_of(g)) return false;
  return true;
}

DecompositionResult decompose(const SublatticeAction& g, const AbelianVarietyModel* model) {
  const std::size_t original_rank = g.embedding().cols();
  DecompositionResult out;
  SublatticeAction current = g;
  auto embed = [&](const Lattice& l, const SublatticeAction& where) {
    return Lattice::spanned_by(original_rank, l.basis() * where.embedding());
  };
  auto check_subvariety = [&](const Lattice& l, const SublatticeAction& where) {
    if (model && !is_abelian_subvariety(l, *model, where.embedding()))
      throw CertificateFailure("stage lattice is not an abelian subvariety");
  };

  for (std::size_t depth = 0;; ++depth) {
    if (depth > g.dim()) throw CertificateFailure("decomposition did not terminate");
    const SublatticeAction n = ramification_subgroup(current);
    if (n.is_trivial()) {
      // Quasi-etale remainder: all of it is abelian.
      if (current.dim() > 0) {
        out.abelian_factors.push_back(embed(Lattice::full(current.rank()), current));
        out.total_abelian_dim += current.dim();
      }
      out.fano_part = SublatticeAction(IntMatrix(0, original_rank), IntMatrix(0, 0),
                                       {AffineMap::identity(0)});
      out.fano_kappa_check = true;
      break;
    }
    if (!quasietale_outside(current, n))
      throw CertificateFailure("quotient by the ramification subgroup is not quasi-etale");

    const Lattice b = invariant_fixed_torus(n);
    check_subvariety(b, current);
    if (b.rank() == 0) {
      out.fano_part = n;
      const AnticanonicalKappa k = kappa_anticanonical(n);
      out.fano_kappa_check = k.kappa == static_cast<long>(n.dim());
      if (!out.fano_kappa_check)
        throw CertificateFailure("remainder is not Q-Fano: kappa(-K) != dim");
      break;
    }
    if (b.rank() == current.rank())
      throw CertificateFailure("ramification subgroup acts by translations");

    const PoincareComplement pc = poincare_complement(b, n.holonomy(), current.seed_form());
    check_subvariety(pc.complement, current);
    SplitAction split = split_action(n, b, pc.complement);

    StageCertificate stage;
    stage.n_order = n.order();
    stage.abelian_dim = b.rank() / 2;
    stage.complement_dim = pc.complement.rank() / 2;
    stage.ker_mu_order = pc.ker_mu_order;
    stage.n_tilde_order = split.n_tilde.size();
    stage.n_c_order = split.n_c.order();
    stage.quasietale_outside_check = true;
    out.stages.push_back(stage);

    out.abelian_factors.push_back(embed(b, current));
    out.total_abelian_dim += stage.abelian_dim;
    current = std::move(split.n_c);
  }
  for (auto& stage : out.stages) stage.fano_kappa_check = out.fano_kappa_check;
  return out;
}

DecompositionResult decompose(const FiniteGroupAction& g) {
  return decompose(g.lattice_action(), &g.variety());
}

}  // namespace fqav
