#include "mltoric/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace mltoric {

std::size_t hash_coords(const std::vector<Integer>& coords) noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ coords.size();
  for (const auto& c : coords) {
    const mpz_srcptr z = c.get_mpz_t();
    std::size_t v = z->_mp_size == 0 ? 0 : static_cast<std::size_t>(z->_mp_d[0]);
    v ^= static_cast<std::size_t>(static_cast<long>(z->_mp_size)) << 48;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Integer pairing(const LatticePoint& m, const DualVector& v) {
  if (m.size() != v.size())
    throw DimensionError("pairing of vectors with lengths " + std::to_string(m.size()) + " and " +
                         std::to_string(v.size()));
  return dot(m.coords(), v.coords());
}

Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const std::vector<Integer>& coords) {
  Integer g = 0;
  for (const auto& c : coords) g = gcd(g, c);
  return g;
}

template <Space S>
IntVector<S> primitive_vector(const IntVector<S>& v) {
  Integer g = content(v.coords());
  if (g == 0) throw DomainError("primitive vector of the zero vector");
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return IntVector<S>(std::move(out));
}

template LatticePoint primitive_vector(const LatticePoint&);
template DualVector primitive_vector(const DualVector&);

// ---------------------------------------------------------------------------

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows,
                                       std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Integer> IntegerMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_)};
}

std::vector<Integer> IntegerMatrix::column(std::size_t j) const {
  std::vector<Integer> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// Fraction-free Bareiss elimination.
Integer IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix m = *this;
  Integer prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sgn_flip * m(n - 1, n - 1);
}

std::size_t IntegerMatrix::rank() const {
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < rows_; ++i) rows.push_back(row(i));
  return rank_of(rows, cols_);
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntegerMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntegerMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntegerMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntegerMatrix::negate_col(std::size_t j) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
}

bool is_unimodular(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Integer d = m.determinant();
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------

std::vector<Integer> SmithForm::elementary_divisors() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(diagonal(i, i));
  return d;
}

SmithForm smith_normal_form(const IntegerMatrix& input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  IntegerMatrix d = input;
  IntegerMatrix u = IntegerMatrix::identity(m);
  IntegerMatrix v = IntegerMatrix::identity(n);

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          done = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          done = false;
        }
      }
      if (!done) continue;
      // Divisibility chain: fold an offending row into the pivot row.
      for (std::size_t i = t + 1; i < m && done; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (mod_floor(d(i, j), d(t, t)) != 0) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            done = false;
            break;
          }
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithForm out{u, d, v, t};
  if (!(out.left * input * out.right == out.diagonal) || !is_unimodular(out.left) ||
      !is_unimodular(out.right))
    throw InternalInconsistency("Smith normal form identity check failed");
  return out;
}

HermiteForm column_hermite_form(const IntegerMatrix& input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  IntegerMatrix h = input;
  IntegerMatrix v = IntegerMatrix::identity(n);
  std::vector<std::size_t> pivots;

  std::size_t k = 0;
  for (std::size_t i = 0; i < m && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(i, k).get_mpz_t(),
                 h(i, j).get_mpz_t());
      const Integer a = h(i, k) / g;
      const Integer b = h(i, j) / g;
      // [col_k col_j] <- [col_k col_j] * [[s, -b], [t, a]], determinant 1.
      for (IntegerMatrix* mat : {&h, &v}) {
        for (std::size_t r = 0; r < mat->rows(); ++r) {
          Integer ck = (*mat)(r, k);
          Integer cj = (*mat)(r, j);
          (*mat)(r, k) = s * ck + t * cj;
          (*mat)(r, j) = -b * ck + a * cj;
        }
      }
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      h.negate_col(k);
      v.negate_col(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer q = floor_div(h(i, j), h(i, k));
      h.add_col_multiple(j, k, -q);
      v.add_col_multiple(j, k, -q);
    }
    pivots.push_back(i);
    ++k;
  }

  IntegerMatrix basis(m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) basis(i, j) = h(i, j);
  if (!(input * v == h) || !is_unimodular(v))
    throw InternalInconsistency("Hermite normal form identity check failed");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = k; j < n; ++j)
      if (h(i, j) != 0) throw InternalInconsistency("Hermite form left a nonzero tail column");
  return {basis, v, pivots};
}

// ---------------------------------------------------------------------------

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) {
    Integer d = x.get_den();
    Integer g = gcd(l, d);
    l = l / g * d;
  }
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    s.canonicalize();
    out[i] = s.get_num();
  }
  Integer g = content(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace

std::size_t rank_of(const std::vector<std::vector<Integer>>& vectors, std::size_t dim) {
  std::vector<std::vector<Rational>> a;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DimensionError("rank: vector length mismatch");
    a.emplace_back(v.begin(), v.end());
  }
  return rref(a, dim).size();
}

std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& rows,
                                                 std::size_t dim) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) {
    if (r.size() != dim) throw DimensionError("kernel: row length mismatch");
    a.emplace_back(r.begin(), r.end());
  }
  auto pivots = rref(a, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(dim, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    basis.push_back(clear_denominators(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_rational(
    const std::vector<std::vector<Integer>>& columns, const std::vector<Integer>& target) {
  const std::size_t dim = target.size();
  const std::size_t k = columns.size();
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(k + 1));
  for (std::size_t j = 0; j < k; ++j) {
    if (columns[j].size() != dim) throw DimensionError("solve: column length mismatch");
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < dim; ++i) a[i][k] = target[i];
  auto pivots = rref(a, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][k];
  return x;
}

// ---------------------------------------------------------------------------

CoordinateChange::CoordinateChange(IntegerMatrix basis, std::vector<std::size_t> pivot_rows,
                                   std::vector<Integer> elementary_divisors)
    : basis_(std::move(basis)),
      pivot_rows_(std::move(pivot_rows)),
      divisors_(std::move(elementary_divisors)) {}

Integer CoordinateChange::index() const {
  Integer p = 1;
  for (const auto& d : divisors_) p *= d;
  return p;
}

bool CoordinateChange::is_identity() const {
  return basis_.rows() == basis_.cols() && basis_ == IntegerMatrix::identity(basis_.rows());
}

std::optional<LatticePoint> CoordinateChange::to_local(const LatticePoint& x) const {
  if (x.size() != ambient_rank()) throw DimensionError("to_local: wrong ambient rank");
  const std::size_t r = rank();
  LatticePoint y(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t p = pivot_rows_[k];
    Integer val = x[p];
    for (std::size_t j = 0; j < k; ++j) val -= basis_(p, j) * y[j];
    if (mod_floor(val, basis_(p, k)) != 0) return std::nullopt;
    y[k] = val / basis_(p, k);
  }
  if (to_ambient(y) != x) return std::nullopt;
  return y;
}

LatticePoint CoordinateChange::to_ambient(const LatticePoint& y) const {
  if (y.size() != rank()) throw DimensionError("to_ambient: wrong local rank");
  LatticePoint x(ambient_rank());
  for (std::size_t i = 0; i < ambient_rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) x[i] += basis_(i, j) * y[j];
  return x;
}

CoordinateChange smith_reindex(std::span<const LatticePoint> generators, std::size_t ambient_rank) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank) throw DimensionError("generator of wrong rank");
  IntegerMatrix a = IntegerMatrix::from_columns(generators, ambient_rank);
  SmithForm snf = smith_normal_form(a);
  HermiteForm hnf = column_hermite_form(a);
  if (hnf.basis.cols() != snf.rank)
    throw InternalInconsistency("Smith and Hermite forms disagree on the rank");
  return CoordinateChange(hnf.basis, hnf.pivot_rows, snf.elementary_divisors());
}

// ---------------------------------------------------------------------------

MembershipOracle::MembershipOracle(std::vector<LatticePoint> generators, DualVector grading,
                                   std::vector<DualVector> cone_normals)
    : generators_(std::move(generators)), grading_(std::move(grading)), normals_(std::move(cone_normals)) {
  std::vector<Integer> degrees;
  for (const auto& g : generators_) {
    Integer d = pairing(g, grading_);
    if (d <= 0)
      throw UnsupportedInput("grading " + to_string(grading_) + " is not positive on generator " +
                             to_string(g));
    degrees.push_back(d);
  }
  order_.resize(generators_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });
}

bool MembershipOracle::admissible(const LatticePoint& residual) const {
  Integer d = pairing(residual, grading_);
  if (d < 0) return false;
  if (d == 0) return residual.is_zero();
  for (const auto& n : normals_)
    if (pairing(residual, n) < 0) return false;
  return true;
}

bool MembershipOracle::reach(const LatticePoint& target) {
  if (target.is_zero()) return true;
  if (auto it = memo_.find(target); it != memo_.end()) return it->second >= 0;
  for (std::size_t idx : order_) {
    LatticePoint r = target - generators_[idx];
    if (admissible(r) && reach(r)) {
      memo_[target] = static_cast<long>(idx);
      return true;
    }
  }
  memo_[target] = -1;
  return false;
}

bool MembershipOracle::contains(const LatticePoint& target) {
  if (target.size() != grading_.size()) throw DimensionError("membership: wrong rank");
  if (!admissible(target)) return false;
  return reach(target);
}

std::optional<std::vector<Integer>> MembershipOracle::solve(const LatticePoint& target) {
  if (!contains(target)) return std::nullopt;
  std::vector<Integer> coeffs(generators_.size(), Integer(0));
  LatticePoint cur = target;
  while (!cur.is_zero()) {
    const auto idx = static_cast<std::size_t>(memo_.at(cur));
    coeffs[idx] += 1;
    cur -= generators_[idx];
  }
  return coeffs;
}

std::optional<std::vector<Integer>> solve_nonnegative(std::span<const LatticePoint> generators,
                                                      const LatticePoint& target,
                                                      const DualVector& grading) {
  if (generators.empty()) throw DomainError("solve_nonnegative needs at least one generator");
  for (const auto& g : generators)
    if (g.size() != target.size()) throw DimensionError("generator and target ranks differ");
  MembershipOracle oracle({generators.begin(), generators.end()}, grading);
  return oracle.solve(target);
}

}  // namespace mltoric
