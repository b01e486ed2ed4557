#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fqav/abelian_variety.hpp"
#include "fqav/classify.hpp"
#include "fqav/group_action.hpp"

namespace fqav {

// Subgroup generated by the elements whose fixed locus has codimension one.
// Throws CertificateFailure if it is not normal.
SublatticeAction ramification_subgroup(const SublatticeAction& g);

// Every g outside N keeps dim Fix(hg) <= n - 2 for all h in N, i.e. A/N -> A/G
// is quasi-etale.
bool quasietale_outside(const SublatticeAction& g, const SublatticeAction& n);

// Connected component through 0 of the fixed locus of the holonomy of N.
Lattice invariant_fixed_torus(const SublatticeAction& n);

// Lift of N to B x C through the addition isogeny.
struct SplitAction {
  // Pairs (t_b on B, t_c o phi|_C on C) in B- and C-coordinates.
  std::vector<std::pair<AffineMap, AffineMap>> n_tilde;
  // Restrictions to C of the elements preserving C.
  SublatticeAction n_c;
  // Points d of B meet C, one per element (d, -d) of ker(B x C -> A).
  std::vector<TorsionPoint> ker_mu;
  Integer ker_mu_order;
};

SplitAction split_action(const SublatticeAction& n, const Lattice& b, const Lattice& c);

struct StageCertificate {
  std::size_t n_order = 0;
  std::size_t abelian_dim = 0;
  std::size_t complement_dim = 0;
  Integer ker_mu_order;
  std::size_t n_tilde_order = 0;
  std::size_t n_c_order = 0;
  bool quasietale_outside_check = false;
  bool fano_kappa_check = false;
};

struct DecompositionResult {
  // Abelian factors B of each stage, as lattices of the original variety.
  std::vector<Lattice> abelian_factors;
  std::size_t total_abelian_dim = 0;
  // The Q-Fano remainder C / N_C; zero-dimensional when X is Q-abelian.
  SublatticeAction fano_part;
  std::vector<StageCertificate> stages;
  bool fano_kappa_check = false;
};

// Same lattice and the same set of elements (order ignored).
bool same_group(const SublatticeAction& a, const SublatticeAction& b);

// Splits off abelian factors until the remainder is Q-Fano. With a model,
// every B and C is additionally checked to be an abelian subvariety.
// Throws CertificateFailure if any certificate fails.
DecompositionResult decompose(const SublatticeAction& g,
                              const AbelianVarietyModel* model = nullptr);
DecompositionResult decompose(const FiniteGroupAction& g);

}  // namespace fqav
