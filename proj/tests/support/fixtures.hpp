#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fqav/abelian_variety.hpp"
#include "fqav/group_action.hpp"

namespace fqav::testing {

Rational q(const char* text);
TorsionPoint point(std::initializer_list<const char*> coords);
RatVector rvec(std::initializer_list<long> coords);

// Rows of (c, d) pairs.
EndoBlockMatrix blocks(std::initializer_list<std::initializer_list<std::pair<long, long>>> rows);
AffineAutomorphism aut(EndoBlockMatrix holonomy, TorsionPoint translation);
AffineAutomorphism linear(EndoBlockMatrix holonomy);

AbelianVarietyModel ei2();           // E_i x E_i
AbelianVarietyModel e_times_ei();    // E x E_i
AbelianVarietyModel e_times_f();     // E x F, non-isogenous
AbelianVarietyModel ei();            // E_i

FiniteGroupAction ex51();        // <i x i> on E_i^2
FiniteGroupAction ex52();        // <[-1] x i> on E x E_i
FiniteGroupAction kummer();      // <-1> on E x F
FiniteGroupAction bielliptic();  // <t_(1/2,0) o (id x [-1])> on E x F
FiniteGroupAction p1_from_ei();  // <i> on E_i

std::vector<std::pair<std::string, FiniteGroupAction>> gallery();

// Random data for the property suites.
using Rng = std::mt19937_64;

IntMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
AbelianVarietyModel random_model(Rng& rng, std::size_t max_dim);
// P D P^-1 with D a monomial matrix of units permuting identical factors and
// P a product of elementary block matrices. Order at most max_order.
EndoBlockMatrix random_finite_order(Rng& rng, const AbelianVarietyModel& a,
                                    std::size_t max_order);
TorsionPoint random_translation(Rng& rng, std::size_t rank,
                                const std::vector<long>& denominators);

}  // namespace fqav::testing
