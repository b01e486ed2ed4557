#include "fqav/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace fqav {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = -m(i, c);
      m.add_row_multiple(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw MathError("matrix entry is not integral");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix work = m;
  return rref(work).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw MathError("determinant of non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = -a(i, c) / a(c, c);
      a.add_row_multiple(i, c, f);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw MathError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw MathError("singular matrix");
  return aug.col_range(n, 2 * n);
}

std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw MathError("matrix/vector shape mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref(aug);
  RatVector x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, m.cols());
  }
  return x;
}

SmithForm snf(const IntMatrix& m) {
  SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), 0};
  IntMatrix& S = f.S;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest |entry| in the trailing block; ties go to the lowest row,
      // then the lowest column.
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (S(i, j) == 0) continue;
          Integer a = abs(S(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (!found) return f;

      S.swap_rows(t, pr);
      f.U.swap_rows(t, pr);
      S.swap_cols(t, pc);
      f.V.swap_cols(t, pc);

      const Integer pivot = S(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        const Integer q = -floor_div(S(i, t), pivot);
        S.add_row_multiple(i, t, q);
        f.U.add_row_multiple(i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        const Integer q = -floor_div(S(t, j), pivot);
        S.add_col_multiple(j, t, q);
        f.V.add_col_multiple(j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (S(i, j) % pivot != 0) {
            S.add_row_multiple(t, i, Integer(1));
            f.U.add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < rows; ++j) f.U(t, j) = -f.U(t, j);
    }
    ++f.rank;
  }
  return f;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix H = m;
  const std::size_t rows = H.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < rows; ++c) {
    while (true) {
      bool found = false;
      std::size_t p = r;
      Integer best;
      for (std::size_t i = r; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Integer a = abs(H(i, c));
        if (!found || a < best) {
          found = true;
          best = a;
          p = i;
        }
      }
      if (!found) break;
      H.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        const Integer q = -floor_div(H(i, c), H(r, c));
        H.add_row_multiple(i, r, q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (std::size_t j = 0; j < H.cols(); ++j) H(r, j) = -H(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = -floor_div(H(i, c), H(r, c));
      if (q != 0) H.add_row_multiple(i, r, q);
    }
    ++r;
  }
  return H.row_range(0, r);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm f = snf(m);
  return f.V.col_range(f.rank, m.cols()).transpose();
}

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(std::size_t ambient_rank)
    : ambient_(ambient_rank), basis_(0, ambient_rank) {}

Lattice::Lattice(std::size_t ambient_rank, const IntMatrix& generators)
    : ambient_(ambient_rank) {
  if (generators.rows() > 0 && generators.cols() != ambient_rank)
    throw MathError("lattice generators have wrong ambient rank");
  basis_ = generators.rows() == 0 ? IntMatrix(0, ambient_rank)
                                  : hermite_normal_form(generators);
  if (basis_.rows() != generators.rows())
    throw MathError("lattice basis is linearly dependent");
}

Lattice Lattice::full(std::size_t ambient_rank) {
  return Lattice(ambient_rank, IntMatrix::identity(ambient_rank));
}

Lattice Lattice::spanned_by(std::size_t ambient_rank, const IntMatrix& rows) {
  Lattice out(ambient_rank);
  if (rows.rows() == 0) return out;
  if (rows.cols() != ambient_rank)
    throw MathError("lattice generators have wrong ambient rank");
  out.basis_ = hermite_normal_form(rows);
  if (out.basis_.rows() == 0) out.basis_ = IntMatrix(0, ambient_rank);
  return out;
}

bool Lattice::is_saturated() const {
  const SmithForm f = snf(basis_);
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.diagonal(i) != 1) return false;
  return true;
}

bool Lattice::spans(const RatVector& v) const { return coordinates(v).has_value(); }

std::optional<RatVector> Lattice::coordinates(const RatVector& v) const {
  if (v.size() != ambient_) throw MathError("vector has wrong ambient rank");
  return solve_rational(to_rational(basis_.transpose()), v);
}

Lattice Lattice::image(const IntMatrix& m) const {
  return spanned_by(ambient_, basis_ * m.transpose());
}

bool Lattice::invariant_under(const IntMatrix& m) const {
  const IntMatrix img = basis_ * m.transpose();
  for (std::size_t i = 0; i < img.rows(); ++i)
    if (!spans(to_rational(img.row(i)))) return false;
  return true;
}

Lattice saturate(const Lattice& l) {
  const IntMatrix orth = integer_kernel(l.basis());
  return Lattice(l.ambient_rank(), integer_kernel(orth));
}

Lattice intersect_lattices(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw MathError("lattices live in different ambient ranks");
  const std::size_t m = a.ambient_rank();
  IntMatrix orth(0, m);
  for (const Lattice* l : {&a, &b}) {
    const IntMatrix k = integer_kernel(l->basis());
    for (std::size_t i = 0; i < k.rows(); ++i) orth.append_row(k.row(i));
  }
  return Lattice(m, integer_kernel(orth));
}

Lattice common_kernel(const std::vector<IntMatrix>& ms, std::size_t ambient_rank) {
  IntMatrix stacked(0, ambient_rank);
  for (const auto& m : ms)
    for (std::size_t i = 0; i < m.rows(); ++i) stacked.append_row(m.row(i));
  return Lattice(ambient_rank, integer_kernel(stacked));
}

Integer direct_sum_index(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw MathError("lattices live in different ambient ranks");
  const std::size_t m = a.ambient_rank();
  if (a.rank() + b.rank() != m) throw MathError("lattices are not complementary");
  IntMatrix stacked(0, m);
  for (const Lattice* l : {&a, &b})
    for (std::size_t i = 0; i < l->rank(); ++i) stacked.append_row(l->basis().row(i));
  const Rational det = determinant(to_rational(stacked));
  if (det == 0) throw MathError("lattices are not complementary");
  return abs(det.get_num());
}

// ----------------------------------------------------------- TorsionPoint

Rational frac(const Rational& q) {
  Rational out = q - Rational(floor_of(q));
  out.canonicalize();
  return out;
}

TorsionPoint::TorsionPoint(RatVector coords) : coords_(std::move(coords)) {
  for (auto& x : coords_) x = frac(x);
}

bool TorsionPoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rational& x) { return x == 0; });
}

Integer TorsionPoint::order() const {
  Integer out = 1;
  for (const auto& x : coords_) out = lcm(out, Integer(x.get_den()));
  return out;
}

TorsionPoint operator+(const TorsionPoint& a, const TorsionPoint& b) {
  if (a.size() != b.size()) throw MathError("torsion points of different rank");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return TorsionPoint(std::move(out));
}

TorsionPoint operator-(const TorsionPoint& a, const TorsionPoint& b) {
  if (a.size() != b.size()) throw MathError("torsion points of different rank");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return TorsionPoint(std::move(out));
}

TorsionPoint operator-(const TorsionPoint& a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return TorsionPoint(std::move(out));
}

TorsionPoint operator*(const IntMatrix& m, const TorsionPoint& p) {
  return TorsionPoint(to_rational(m) * p.coords());
}

TorsionPoint operator*(const Integer& k, const TorsionPoint& p) {
  RatVector out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rational(k) * p[i];
  return TorsionPoint(std::move(out));
}

bool operator<(const TorsionPoint& a, const TorsionPoint& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                      b.coords_.begin(), b.coords_.end());
}

std::string TorsionPoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i].get_str();
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------- SubtorusChart

SubtorusChart::SubtorusChart(const Lattice& saturated)
    : ambient_(saturated.ambient_rank()), rank_(saturated.rank()) {
  const SmithForm f = snf(saturated.basis());
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.diagonal(i) != 1) throw MathError("subtorus lattice is not saturated");
  V_ = f.V;
  V_inv_ = to_integer(inverse(to_rational(f.V)));
  U_ = f.U;
}

TorsionPoint SubtorusChart::quotient(const RatVector& x) const {
  const RatVector y = to_rational(V_.transpose()) * x;
  return TorsionPoint(RatVector(y.begin() + rank_, y.end()));
}

TorsionPoint SubtorusChart::canonical(const RatVector& x) const {
  const TorsionPoint q = quotient(x);
  RatVector out(ambient_, Rational(0));
  for (std::size_t i = rank_; i < ambient_; ++i) {
    const Rational& qi = q[i - rank_];
    if (qi == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) out[j] += qi * V_inv_(i, j);
  }
  return TorsionPoint(std::move(out));
}

std::optional<TorsionPoint> SubtorusChart::subtorus_coordinates(
    const RatVector& x) const {
  const RatVector y = to_rational(V_.transpose()) * x;
  for (std::size_t i = rank_; i < ambient_; ++i)
    if (y[i].get_den() != 1) return std::nullopt;
  RatVector c(y.begin(), y.begin() + rank_);
  return TorsionPoint(to_rational(U_.transpose()) * c);
}

// ------------------------------------------------------- affine solving

AffineSolutionSet solve_affine_mod_lattice(const IntMatrix& m,
                                           const TorsionPoint& a) {
  if (a.size() != m.rows()) throw MathError("right-hand side has wrong rank");
  const SmithForm f = snf(m);
  AffineSolutionSet out;
  out.kernel = Lattice(m.cols(), integer_kernel(m));

  const RatVector b = to_rational(f.U) * a.coords();
  for (std::size_t i = f.rank; i < m.rows(); ++i)
    if (b[i].get_den() != 1) return out;

  std::vector<Integer> radix(f.rank);
  std::size_t count = 1;
  for (std::size_t i = 0; i < f.rank; ++i) {
    radix[i] = f.diagonal(i);
    if (!radix[i].fits_ulong_p() || radix[i].get_ui() > (std::size_t{1} << 22) / count)
      throw MathError("too many affine solution components to enumerate");
    count *= radix[i].get_ui();
  }
  out.nonempty = true;
  out.component_count = count;

  const SubtorusChart chart(out.kernel);
  const RatMatrix V = to_rational(f.V);
  std::vector<Integer> digits(f.rank, Integer(0));
  out.representatives.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    RatVector y(m.cols(), Rational(0));
    for (std::size_t i = 0; i < f.rank; ++i) {
      y[i] = (b[i] + Rational(digits[i])) / Rational(radix[i]);
      y[i].canonicalize();
    }
    out.representatives.push_back(chart.canonical(V * y));
    for (std::size_t i = 0; i < f.rank; ++i) {
      if (++digits[i] < radix[i]) break;
      digits[i] = 0;
    }
  }
  std::sort(out.representatives.begin(), out.representatives.end());
  return out;
}

}  // namespace fqav
