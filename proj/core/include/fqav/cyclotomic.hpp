#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "fqav/linalg.hpp"

namespace fqav {

// Dense polynomial over Q, coefficient i multiplies x^i; no trailing zeros.
using RatPoly = std::vector<Rational>;

// The m-th cyclotomic polynomial with integer coefficients, low degree first.
IntVector cyclotomic_polynomial(unsigned m);
unsigned euler_phi(unsigned m);

// Q(zeta_m) = Q[x] / Phi_m. Only conductors divisible by 12 are admitted, so
// that zeta_4 and zeta_6 are always available.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> make(unsigned m);

  unsigned conductor() const { return m_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  const IntVector& modulus() const { return modulus_; }

 private:
  explicit CycloField(unsigned m);
  unsigned m_;
  IntVector modulus_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

class CycloNumber {
 public:
  CycloNumber(FieldPtr field, const Rational& value);
  // Reduces an arbitrary polynomial in zeta_m.
  CycloNumber(FieldPtr field, const RatPoly& poly);

  static CycloNumber zero(FieldPtr field) { return CycloNumber(field, Rational(0)); }
  static CycloNumber one(FieldPtr field) { return CycloNumber(field, Rational(1)); }
  // zeta_m^(k * m / d); throws MathError("root order outside field") if d does
  // not divide m.
  static CycloNumber root_of_unity(FieldPtr field, unsigned d, long k);

  const FieldPtr& field() const { return field_; }
  const RatVector& coeffs() const { return coeffs_; }
  bool is_zero() const;
  // Throws MathError("division by zero").
  CycloNumber inverse() const;
  // Image under zeta_m -> zeta_m^{-1}.
  CycloNumber conj() const;

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator-(const CycloNumber& a);
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
    return a * b.inverse();
  }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) {
    return !(a == b);
  }

 private:
  FieldPtr field_;
  RatVector coeffs_;  // length == field degree
};

// Square matrix over a single cyclotomic field.
class CycloMatrix {
 public:
  CycloMatrix(FieldPtr field, std::size_t n);
  static CycloMatrix identity(FieldPtr field, std::size_t n);
  static CycloMatrix from_rational(FieldPtr field, const RatMatrix& m);

  std::size_t size() const { return n_; }
  const FieldPtr& field() const { return field_; }
  CycloNumber& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const CycloNumber& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * n_ + c];
  }

  CycloMatrix conj() const;
  std::size_t rank() const;

  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b);
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<CycloNumber> entries_;
};

// dim ker(M - zeta I) over Q(zeta_m).
std::size_t eigen_multiplicity(const CycloMatrix& m, const CycloNumber& zeta);

}  // namespace fqav
