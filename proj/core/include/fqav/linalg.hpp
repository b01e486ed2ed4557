#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "fqav/error.hpp"

namespace fqav {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw MathError("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw MathError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_,
                          data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  const std::vector<T>& data() const { return data_; }

  void append_row(const std::vector<T>& row) {
    if (rows_ == 0 && data_.empty()) cols_ = row.size();
    if (row.size() != cols_) throw MathError("row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  // Rows [begin, end).
  Matrix row_range(std::size_t begin, std::size_t end) const {
    Matrix out(end - begin, cols_);
    for (std::size_t r = begin; r < end; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r - begin, c) = (*this)(r, c);
    return out;
  }
  // Columns [begin, end).
  Matrix col_range(std::size_t begin, std::size_t end) const {
    Matrix out(rows_, end - begin);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = begin; c < end; ++c) out(r, c - begin) = (*this)(r, c);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  // Lexicographic on (shape, entries).
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      if (a.data_[i] < b.data_[i]) return true;
      if (b.data_[i] < a.data_[i]) return false;
    }
    return false;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw MathError("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator*(const T& k, const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x *= k;
    return out;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw MathError("matrix/vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw MathError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
// Throws MathError if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);

// Exact rank over the rationals.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
// Throws MathError("singular matrix") if not invertible.
RatMatrix inverse(const RatMatrix& m);
// Some solution of m * x = b over the rationals, if one exists.
std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b);

// U * M * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ..., s_i >= 0.
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;

  Integer diagonal(std::size_t i) const { return S(i, i); }
};

SmithForm snf(const IntMatrix& m);

// Row-style Hermite normal form of the row module of m; zero rows dropped.
// Pivots positive, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Rows form a basis of {x in Z^cols : m * x = 0}; the result is saturated.
IntMatrix integer_kernel(const IntMatrix& m);

// A free sublattice of Z^ambient_rank, stored by its Hermite basis so that
// equality of lattices is equality of bases.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_rank = 0);
  // Rows of `generators` must be linearly independent.
  Lattice(std::size_t ambient_rank, const IntMatrix& generators);
  static Lattice full(std::size_t ambient_rank);
  // Lattice generated by arbitrary (possibly dependent) rows.
  static Lattice spanned_by(std::size_t ambient_rank, const IntMatrix& rows);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  bool is_saturated() const;
  // v in the rational span.
  bool spans(const RatVector& v) const;
  // Coordinates of v with respect to basis(), if v lies in the rational span.
  std::optional<RatVector> coordinates(const RatVector& v) const;
  // The lattice generated by m * b for the basis vectors b.
  Lattice image(const IntMatrix& m) const;
  bool invariant_under(const IntMatrix& m) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }
  friend bool operator<(const Lattice& a, const Lattice& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
  }

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

Lattice saturate(const Lattice& l);
// Saturation of the intersection of the rational spans.
Lattice intersect_lattices(const Lattice& a, const Lattice& b);
// Common saturated kernel of a family of square matrices.
Lattice common_kernel(const std::vector<IntMatrix>& ms, std::size_t ambient_rank);
// [Z^m : a + b] for complementary lattices; throws if the sum is not full rank.
Integer direct_sum_index(const Lattice& a, const Lattice& b);

Rational frac(const Rational& q);

// A point of R^k / Z^k with rational coordinates, reduced into [0, 1).
class TorsionPoint {
 public:
  TorsionPoint() = default;
  explicit TorsionPoint(std::size_t dim) : coords_(dim, Rational(0)) {}
  explicit TorsionPoint(RatVector coords);

  static TorsionPoint zero(std::size_t dim) { return TorsionPoint(dim); }

  std::size_t size() const { return coords_.size(); }
  const RatVector& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;
  // lcm of the coordinate denominators.
  Integer order() const;

  friend TorsionPoint operator+(const TorsionPoint& a, const TorsionPoint& b);
  friend TorsionPoint operator-(const TorsionPoint& a, const TorsionPoint& b);
  friend TorsionPoint operator-(const TorsionPoint& a);
  friend TorsionPoint operator*(const IntMatrix& m, const TorsionPoint& p);
  friend TorsionPoint operator*(const Integer& k, const TorsionPoint& p);

  friend bool operator==(const TorsionPoint& a, const TorsionPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const TorsionPoint& a, const TorsionPoint& b) {
    return !(a == b);
  }
  friend bool operator<(const TorsionPoint& a, const TorsionPoint& b);

  std::string to_string() const;

 private:
  RatVector coords_;
};

// Coordinates adapted to a saturated lattice K of Z^m: a unimodular basis whose
// first rank(K) vectors span K. Gives the quotient map onto the torus
// R^m / (K_R + Z^m) and a canonical representative of each K-translate.
class SubtorusChart {
 public:
  explicit SubtorusChart(const Lattice& saturated);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return rank_; }
  // Coordinates in R^m / (K_R + Z^m), reduced into [0, 1).
  TorsionPoint quotient(const RatVector& x) const;
  // Canonical point of x + K_R.
  TorsionPoint canonical(const RatVector& x) const;
  // If x lies on K_R + Z^m, the coordinates (mod 1) of that point of the
  // subtorus with respect to the Hermite basis of K.
  std::optional<TorsionPoint> subtorus_coordinates(const RatVector& x) const;

 private:
  std::size_t ambient_;
  std::size_t rank_;
  IntMatrix V_;       // columns: dual coordinates
  IntMatrix V_inv_;   // rows: adapted basis of Z^m
  IntMatrix U_;       // first rank rows of V_inv_ = U_ * hermite basis
};

// {x in R^q / Z^q : M x = a mod Z^p} for an integer p x q matrix M.
struct AffineSolutionSet {
  bool nonempty = false;
  Lattice kernel;
  std::size_t component_count = 0;
  std::vector<TorsionPoint> representatives;
};

AffineSolutionSet solve_affine_mod_lattice(const IntMatrix& m,
                                           const TorsionPoint& a);

}  // namespace fqav
