#include "fqav/cyclotomic.hpp"

#include <map>
#include <numeric>

namespace fqav {

namespace {

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

// a = q * b + r with deg r < deg b; b nonzero.
void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational f = r.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

RatPoly to_poly(const IntVector& v) {
  RatPoly out;
  for (const auto& x : v) out.emplace_back(x);
  trim(out);
  return out;
}

}  // namespace

unsigned euler_phi(unsigned m) {
  unsigned out = 0;
  for (unsigned k = 1; k <= m; ++k)
    if (std::gcd(k, m) == 1) ++out;
  return out;
}

IntVector cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw MathError("cyclotomic polynomial of order 0");
  std::map<unsigned, RatPoly> known;
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    RatPoly p(d + 1, Rational(0));  // x^d - 1
    p[0] = -1;
    p[d] = 1;
    for (const auto& [e, phi_e] : known) {
      if (d % e != 0) continue;
      RatPoly q, r;
      poly_divmod(p, phi_e, q, r);
      if (!r.empty()) throw CertificateFailure("cyclotomic division left a remainder");
      p = std::move(q);
    }
    known.emplace(d, std::move(p));
  }
  IntVector out;
  for (const auto& c : known.at(m)) {
    if (c.get_den() != 1) throw CertificateFailure("cyclotomic polynomial not integral");
    out.push_back(c.get_num());
  }
  return out;
}

// -------------------------------------------------------------- CycloField

CycloField::CycloField(unsigned m) : m_(m), modulus_(cyclotomic_polynomial(m)) {}

std::shared_ptr<const CycloField> CycloField::make(unsigned m) {
  if (m == 0 || m % 12 != 0)
    throw MathError("cyclotomic conductor must be a positive multiple of 12");
  return std::shared_ptr<const CycloField>(new CycloField(m));
}

// ------------------------------------------------------------- CycloNumber

CycloNumber::CycloNumber(FieldPtr field, const Rational& value)
    : field_(std::move(field)) {
  coeffs_.assign(field_->degree(), Rational(0));
  coeffs_[0] = value;
}

CycloNumber::CycloNumber(FieldPtr field, const RatPoly& poly) : field_(std::move(field)) {
  RatPoly q, r;
  poly_divmod(poly, to_poly(field_->modulus()), q, r);
  r.resize(field_->degree(), Rational(0));
  coeffs_ = std::move(r);
}

CycloNumber CycloNumber::root_of_unity(FieldPtr field, unsigned d, long k) {
  const unsigned m = field->conductor();
  if (d == 0 || m % d != 0) throw MathError("root order outside field");
  long e = (k % static_cast<long>(d)) * static_cast<long>(m / d);
  e %= static_cast<long>(m);
  if (e < 0) e += m;
  RatPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
  p[e] = 1;
  return CycloNumber(std::move(field), p);
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  // Extended Euclid: s * a + t * Phi = g with g a nonzero constant.
  RatPoly a = coeffs_;
  trim(a);
  RatPoly b = to_poly(field_->modulus());
  RatPoly s0{Rational(1)}, s1{};
  while (!b.empty()) {
    RatPoly q, r;
    poly_divmod(a, b, q, r);
    RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (a.size() != 1) throw CertificateFailure("cyclotomic modulus is not irreducible");
  const Rational g = a[0];
  for (auto& c : s0) c /= g;
  return CycloNumber(field_, s0);
}

CycloNumber CycloNumber::conj() const {
  const unsigned m = field_->conductor();
  RatPoly p(m, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p[(m - i) % m] += coeffs_[i];
  trim(p);
  return CycloNumber(field_, p);
}

namespace {
void check_field(const CycloNumber& a, const CycloNumber& b) {
  if (a.field()->conductor() != b.field()->conductor())
    throw MathError("cyclotomic numbers from different fields");
}
}  // namespace

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
  check_field(a, b);
  CycloNumber out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
  check_field(a, b);
  CycloNumber out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] -= b.coeffs_[i];
  return out;
}

CycloNumber operator-(const CycloNumber& a) {
  CycloNumber out = a;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  check_field(a, b);
  RatPoly pa = a.coeffs_, pb = b.coeffs_;
  trim(pa);
  trim(pb);
  return CycloNumber(a.field_, poly_mul(pa, pb));
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  return a.field_->conductor() == b.field_->conductor() && a.coeffs_ == b.coeffs_;
}

// ------------------------------------------------------------- CycloMatrix

CycloMatrix::CycloMatrix(FieldPtr field, std::size_t n)
    : field_(field), n_(n), entries_(n * n, CycloNumber::zero(field)) {}

CycloMatrix CycloMatrix::identity(FieldPtr field, std::size_t n) {
  CycloMatrix out(field, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = CycloNumber::one(field);
  return out;
}

CycloMatrix CycloMatrix::from_rational(FieldPtr field, const RatMatrix& m) {
  if (!m.square()) throw MathError("cyclotomic matrix must be square");
  CycloMatrix out(field, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = CycloNumber(field, m(i, j));
  return out;
}

CycloMatrix CycloMatrix::conj() const {
  CycloMatrix out = *this;
  for (auto& e : out.entries_) e = e.conj();
  return out;
}

std::size_t CycloMatrix::rank() const {
  std::vector<CycloNumber> a = entries_;
  auto at = [&](std::size_t r, std::size_t c) -> CycloNumber& { return a[r * n_ + c]; };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_ && r < n_; ++c) {
    // First nonzero entry in this column.
    std::size_t p = r;
    while (p < n_ && at(p, c).is_zero()) ++p;
    if (p == n_) continue;
    if (p != r)
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(p, j), at(r, j));
    const CycloNumber inv = at(r, c).inverse();
    for (std::size_t i = r + 1; i < n_; ++i) {
      if (at(i, c).is_zero()) continue;
      const CycloNumber f = at(i, c) * inv;
      for (std::size_t j = c; j < n_; ++j) at(i, j) = at(i, j) - f * at(r, j);
    }
    ++r;
  }
  return r;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.n_ != b.n_) throw MathError("cyclotomic matrix shape mismatch");
  CycloMatrix out(a.field_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) {
      CycloNumber s = CycloNumber::zero(a.field_);
      for (std::size_t k = 0; k < a.n_; ++k) s = s + a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.n_ != b.n_) throw MathError("cyclotomic matrix shape mismatch");
  CycloMatrix out = a;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    out.entries_[i] = a.entries_[i] - b.entries_[i];
  return out;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
  return a.n_ == b.n_ && a.field_->conductor() == b.field_->conductor() &&
         a.entries_ == b.entries_;
}

std::size_t eigen_multiplicity(const CycloMatrix& m, const CycloNumber& zeta) {
  CycloMatrix shifted = m;
  for (std::size_t i = 0; i < m.size(); ++i) shifted(i, i) = m(i, i) - zeta;
  return m.size() - shifted.rank();
}

}  // namespace fqav
