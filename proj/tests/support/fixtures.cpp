#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

namespace fqav::testing {

Rational q(const char* text) {
  Rational out(text);
  out.canonicalize();
  return out;
}

TorsionPoint point(std::initializer_list<const char*> coords) {
  RatVector v;
  for (const char* c : coords) v.push_back(q(c));
  return TorsionPoint(std::move(v));
}

RatVector rvec(std::initializer_list<long> coords) {
  RatVector v;
  for (long c : coords) v.emplace_back(c);
  return v;
}

EndoBlockMatrix blocks(
    std::initializer_list<std::initializer_list<std::pair<long, long>>> rows) {
  EndoBlockMatrix out(rows.size());
  std::size_t j = 0;
  for (const auto& row : rows) {
    std::size_t k = 0;
    for (const auto& [c, d] : row) {
      out(j, k).c = c;
      out(j, k).d = d;
      ++k;
    }
    ++j;
  }
  return out;
}

AffineAutomorphism aut(EndoBlockMatrix holonomy, TorsionPoint translation) {
  return {std::move(holonomy), std::move(translation)};
}

AffineAutomorphism linear(EndoBlockMatrix holonomy) {
  const std::size_t rank = 2 * holonomy.size();
  return {std::move(holonomy), TorsionPoint::zero(rank)};
}

AbelianVarietyModel ei2() {
  return AbelianVarietyModel({EllipticFactor::zeta4(), EllipticFactor::zeta4()});
}
AbelianVarietyModel e_times_ei() {
  return AbelianVarietyModel({EllipticFactor::generic("E"), EllipticFactor::zeta4()});
}
AbelianVarietyModel e_times_f() {
  return AbelianVarietyModel({EllipticFactor::generic("E"), EllipticFactor::generic("F")});
}
AbelianVarietyModel ei() { return AbelianVarietyModel({EllipticFactor::zeta4()}); }

FiniteGroupAction ex51() {
  return close_group(ei2(), {linear(blocks({{{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}}))});
}
FiniteGroupAction ex52() {
  return close_group(e_times_ei(), {linear(blocks({{{-1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}))});
}
FiniteGroupAction kummer() {
  return close_group(e_times_f(), {linear(EndoBlockMatrix::scalar(2, -1))});
}
FiniteGroupAction bielliptic() {
  return close_group(e_times_f(), {aut(blocks({{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}}),
                                       point({"1/2", "0", "0", "0"}))});
}
FiniteGroupAction p1_from_ei() { return close_group(ei(), {linear(blocks({{{0, 1}}}))}); }

std::vector<std::pair<std::string, FiniteGroupAction>> gallery() {
  return {{"ex51", ex51()},
          {"ex52", ex52()},
          {"kummer", kummer()},
          {"bielliptic", bielliptic()},
          {"p1-from-Ei", p1_from_ei()}};
}

// ----------------------------------------------------------------- random

namespace {

long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Units of Z[tau] as (c, d) with c + d tau.
EndoBlock random_unit(Rng& rng, CmType cm) {
  static const std::vector<std::pair<long, long>> i_units{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  static const std::vector<std::pair<long, long>> w_units{{1, 0},  {0, 1},  {-1, 1},
                                                          {-1, 0}, {0, -1}, {1, -1}};
  static const std::vector<std::pair<long, long>> signs{{1, 0}, {-1, 0}};
  const auto& pool = cm == CmType::Zeta4 ? i_units : cm == CmType::Zeta6 ? w_units : signs;
  const auto& [c, d] = pool[uniform(rng, 0, static_cast<long>(pool.size()) - 1)];
  return {c, d};
}

}  // namespace

IntMatrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

AbelianVarietyModel random_model(Rng& rng, std::size_t max_dim) {
  const std::size_t n = uniform(rng, 1, static_cast<long>(max_dim));
  std::vector<EllipticFactor> f;
  for (std::size_t j = 0; j < n; ++j) {
    switch (uniform(rng, 0, 3)) {
      case 0:
        f.push_back(EllipticFactor::zeta4());
        break;
      case 1:
        f.push_back(EllipticFactor::zeta6());
        break;
      case 2:
        f.push_back(EllipticFactor::generic("E"));
        break;
      default:
        f.push_back(EllipticFactor::generic("F"));
        break;
    }
  }
  return AbelianVarietyModel(std::move(f));
}

EndoBlockMatrix random_finite_order(Rng& rng, const AbelianVarietyModel& a,
                                    std::size_t max_order) {
  const std::size_t n = a.dim();
  while (true) {
    // A random permutation inside each class of identical factors.
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (a.factor(j).same_curve(a.factor(k)) && uniform(rng, 0, 1))
          std::swap(sigma[j], sigma[k]);
    EndoBlockMatrix d(n);
    for (std::size_t j = 0; j < n; ++j) d(sigma[j], j) = random_unit(rng, a.factor(j).cm);

    EndoBlockMatrix p = EndoBlockMatrix::identity(n);
    EndoBlockMatrix p_inv = EndoBlockMatrix::identity(n);
    const long steps = uniform(rng, 0, 3);
    for (long s = 0; s < steps; ++s) {
      const std::size_t j = uniform(rng, 0, static_cast<long>(n) - 1);
      const std::size_t k = uniform(rng, 0, static_cast<long>(n) - 1);
      if (j == k || !a.factor(j).same_curve(a.factor(k))) continue;
      EndoBlockMatrix e = EndoBlockMatrix::identity(n);
      EndoBlockMatrix e_inv = EndoBlockMatrix::identity(n);
      const long c = uniform(rng, -2, 2);
      const long dd = a.factor(j).has_cm() ? uniform(rng, -2, 2) : 0;
      e(j, k) = {c, dd};
      e_inv(j, k) = {-c, -dd};
      p = compose(a, p, e);
      p_inv = compose(a, e_inv, p_inv);
    }
    EndoBlockMatrix out = compose(a, p, compose(a, d, p_inv));
    if (multiplicative_order(rational_rep(a, out)) <= max_order) return out;
  }
}

TorsionPoint random_translation(Rng& rng, std::size_t rank,
                                const std::vector<long>& denominators) {
  const long den = denominators[uniform(rng, 0, static_cast<long>(denominators.size()) - 1)];
  RatVector v;
  for (std::size_t i = 0; i < rank; ++i) v.emplace_back(uniform(rng, 0, den - 1), den);
  for (auto& x : v) x.canonicalize();
  return TorsionPoint(std::move(v));
}

}  // namespace fqav::testing
