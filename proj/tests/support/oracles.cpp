#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fqav::oracle {

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out,
             std::vector<std::size_t>& cur, std::size_t from) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, out, cur, 0);
  return out;
}

long positive_mod(long x, long n) {
  const long r = x % n;
  return r < 0 ? r + n : r;
}

int moebius(unsigned n) {
  int out = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    out = -out;
  }
  return n > 1 ? -out : out;
}

using Poly = std::vector<Integer>;  // low degree first

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic polynomial.
Poly poly_div(Poly a, const Poly& b) {
  Poly out(a.size() - b.size() + 1, Integer(0));
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = a[i + b.size() - 1];
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= out[i] * b[j];
  }
  return out;
}

// Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}.
Poly cyclotomic(unsigned d) {
  Poly num{1}, den{1};
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    Poly f(e + 1, Integer(0));
    f[0] = -1;
    f[e] = 1;
    const int mu = moebius(d / e);
    if (mu == 1) num = poly_mul(num, f);
    if (mu == -1) den = poly_mul(den, f);
  }
  return poly_div(num, den);
}

}  // namespace

Integer bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Integer> determinantal_divisors(const IntMatrix& m) {
  const std::size_t top = std::min(m.rows(), m.cols());
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= top; ++k) {
    Integer g = 0;
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k)) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        g = gcd(g, bareiss_determinant(sub));
      }
    out.push_back(abs(g));
  }
  return out;
}

std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (const auto& d : determinantal_divisors(m)) {
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

std::size_t rank_by_minors(const IntMatrix& m) { return elementary_divisors(m).size(); }

bool rows_saturated(const IntMatrix& rows) {
  if (rows.rows() == 0) return true;
  const auto d = determinantal_divisors(rows);
  return d.size() == rows.rows() && d.back() == 1;
}

std::uint64_t count_grid_solutions(const IntMatrix& m, const TorsionPoint& a, long grid) {
  const std::size_t p = m.rows(), qn = m.cols();
  std::vector<long> mm(p * qn), target(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < qn; ++j) mm[i * qn + j] = positive_mod(m(i, j).get_si(), grid);
    const Rational scaled = a[i] * grid;
    if (scaled.get_den() != 1) throw std::invalid_argument("grid too coarse for a");
    target[i] = positive_mod(scaled.get_num().get_si(), grid);
  }
  std::vector<long> v(qn, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < qn; ++j) s += mm[i * qn + j] * v[j];
      ok = s % grid == target[i];
    }
    if (ok) ++count;
    std::size_t j = 0;
    for (; j < qn; ++j) {
      if (++v[j] < grid) break;
      v[j] = 0;
    }
    if (j == qn) break;
  }
  return count;
}

std::vector<TorsionPoint> grid_fixed_points(const AffineMap& g, long grid) {
  const std::size_t m = g.rank();
  std::vector<TorsionPoint> out;
  std::vector<long> v(m, 0);
  while (true) {
    RatVector x;
    for (long c : v) x.emplace_back(c, grid);
    for (auto& c : x) c.canonicalize();
    const TorsionPoint pt(std::move(x));
    if (g(pt) == pt) out.push_back(pt);
    std::size_t j = 0;
    for (; j < m; ++j) {
      if (++v[j] < grid) break;
      v[j] = 0;
    }
    if (j == m) break;
  }
  return out;
}

std::vector<long> analytic_spectrum(const AbelianVarietyModel& a, const EndoBlockMatrix& phi,
                                    std::size_t order) {
  using C = std::complex<double>;
  const std::size_t n = a.dim();
  const double pi = std::numbers::pi;
  auto tau = [&](std::size_t j) {
    switch (a.factor(j).cm) {
      case CmType::Zeta4:
        return C(0, 1);
      case CmType::Zeta6:
        return std::polar(1.0, pi / 3);
      default:
        return C(0, 0);
    }
  };
  std::vector<C> m(n * n), power(n * n, C(0));
  for (std::size_t j = 0; j < n; ++j) {
    power[j * n + j] = 1;
    for (std::size_t k = 0; k < n; ++k)
      m[j * n + k] = phi(j, k).c.get_d() + phi(j, k).d.get_d() * tau(j);
  }
  std::vector<C> traces(order);
  for (std::size_t t = 0; t < order; ++t) {
    C tr = 0;
    for (std::size_t j = 0; j < n; ++j) tr += power[j * n + j];
    traces[t] = tr;
    std::vector<C> next(n * n, C(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += power[i * n + l] * m[l * n + j];
    power = std::move(next);
  }
  std::vector<long> out(order);
  for (std::size_t k = 0; k < order; ++k) {
    C s = 0;
    for (std::size_t t = 0; t < order; ++t)
      s += traces[t] * std::polar(1.0, -2 * pi * double(k * t) / double(order));
    s /= double(order);
    const double r = std::round(s.real());
    if (std::abs(s - C(r, 0)) > 1e-6) throw std::runtime_error("spectrum not integral");
    out[k] = static_cast<long>(r);
  }
  return out;
}

Rational age_from_spectrum(const std::vector<long>& spectrum) {
  Rational out = 0;
  const long order = static_cast<long>(spectrum.size());
  for (long k = 0; k < order; ++k) out += Rational(spectrum[k] * k, order);
  out.canonicalize();
  return out;
}

std::size_t rational_root_multiplicity(const IntMatrix& rho, unsigned d) {
  const Poly phi = cyclotomic(d);
  const std::size_t n = rho.rows();
  IntMatrix value(n, n), power = IntMatrix::identity(n);
  for (const auto& c : phi) {
    value = value + c * power;
    power = power * rho;
  }
  const std::size_t kernel = n - rank_by_minors(value);
  const std::size_t deg = phi.size() - 1;
  if (kernel % deg) throw std::runtime_error("kernel not a multiple of phi(d)");
  return kernel / deg;
}

std::vector<AffineMap> naive_closure(const std::vector<AffineMap>& gens, std::size_t rank,
                                     std::size_t cap) {
  std::set<AffineMap> s(gens.begin(), gens.end());
  s.insert(AffineMap::identity(rank));
  while (true) {
    std::set<AffineMap> next = s;
    for (const auto& x : s)
      for (const auto& y : s) next.insert(x * y);
    if (next.size() > cap) throw std::runtime_error("closure too large");
    if (next.size() == s.size()) break;
    s = std::move(next);
  }
  return {s.begin(), s.end()};
}

}  // namespace fqav::oracle
