#pragma once

// Exact integer linear algebra: lattice vectors in M and N, the pairing
// between them, integer matrices with Smith and Hermite normal forms, and
// nonnegative integer feasibility.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mltoric/errors.hpp"
#include "mltoric/integer.hpp"

namespace mltoric {

// M is the character lattice, N the lattice of one-parameter subgroups.
enum class Space { character, cocharacter };

constexpr Space dual_of(Space s) {
  return s == Space::character ? Space::cocharacter : Space::character;
}

template <Space S>
class IntVector {
 public:
  static constexpr Space space = S;

  IntVector() = default;
  explicit IntVector(std::size_t n) : c_(n) {}
  explicit IntVector(std::vector<Integer> coords) : c_(std::move(coords)) {}
  IntVector(std::initializer_list<long> coords) {
    c_.reserve(coords.size());
    for (long v : coords) c_.emplace_back(v);
  }

  std::size_t size() const noexcept { return c_.size(); }
  const Integer& operator[](std::size_t i) const { return c_[i]; }
  Integer& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<Integer>& coords() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  IntVector& operator+=(const IntVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  IntVector& operator-=(const IntVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  IntVector& operator*=(const Integer& k) {
    for (auto& v : c_) v *= k;
    return *this;
  }

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& k, IntVector a) { return a *= k; }
  friend IntVector operator-(IntVector a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntVector& a, const IntVector& b) { return !(a == b); }
  // Lexicographic.
  friend bool operator<(const IntVector& a, const IntVector& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      int c = cmp(a.c_[i], b.c_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

 private:
  void check_size(const IntVector& o) const {
    if (o.c_.size() != c_.size())
      throw DimensionError("vector length mismatch: " + std::to_string(c_.size()) + " vs " +
                           std::to_string(o.c_.size()));
  }

  std::vector<Integer> c_;
};

using LatticePoint = IntVector<Space::character>;
using DualVector = IntVector<Space::cocharacter>;

template <Space S>
std::string to_string(const IntVector<S>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::size_t hash_coords(const std::vector<Integer>& coords) noexcept;

template <Space S>
struct IntVectorHash {
  std::size_t operator()(const IntVector<S>& v) const noexcept { return hash_coords(v.coords()); }
};

// <m, v> for m in M and v in N.
Integer pairing(const LatticePoint& m, const DualVector& v);

// Same sum for two vectors of a single space; used by cone code that is
// agnostic of which side of the duality it works on.
Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b);

// v / gcd(v). Throws DomainError on the zero vector.
template <Space S>
IntVector<S> primitive_vector(const IntVector<S>& v);

Integer content(const std::vector<Integer>& coords);

// ---------------------------------------------------------------------------

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  // Columns are the given vectors; all must have length `rows`.
  template <Space S>
  static IntegerMatrix from_columns(std::span<const IntVector<S>> cols, std::size_t rows) {
    IntegerMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  std::vector<Integer> column(std::size_t j) const;

  IntegerMatrix transpose() const;
  Integer determinant() const;  // square only
  std::size_t rank() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  // col_i += k * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

bool is_unimodular(const IntegerMatrix& m);

// left * input * right == diagonal, left and right unimodular, diagonal
// entries d_1 | d_2 | ... | d_rank positive, rest zero. The identity is
// re-verified before returning.
struct SmithForm {
  IntegerMatrix left;
  IntegerMatrix diagonal;
  IntegerMatrix right;
  std::size_t rank = 0;

  std::vector<Integer> elementary_divisors() const;
};

SmithForm smith_normal_form(const IntegerMatrix& input);

// input * transform == [basis | 0] with basis in column echelon form:
// pivot rows strictly increase, pivots are positive, and entries to the left
// of a pivot are reduced into [0, pivot).
struct HermiteForm {
  IntegerMatrix basis;
  IntegerMatrix transform;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm column_hermite_form(const IntegerMatrix& input);

// ---------------------------------------------------------------------------
// Rational helpers for small dense systems.

std::size_t rank_of(const std::vector<std::vector<Integer>>& vectors, std::size_t dim);

// Basis of {x : <row, x> = 0 for all rows}, each basis vector primitive.
std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& rows,
                                                 std::size_t dim);

// Solves sum_j x_j * columns[j] == target over Q. Returns nullopt when the
// system is inconsistent; free variables are set to zero.
std::optional<std::vector<Rational>> solve_rational(
    const std::vector<std::vector<Integer>>& columns, const std::vector<Integer>& target);

// ---------------------------------------------------------------------------

// Identifies the group generated by a set of lattice points with Z^r.
class CoordinateChange {
 public:
  CoordinateChange() = default;
  CoordinateChange(IntegerMatrix basis, std::vector<std::size_t> pivot_rows,
                   std::vector<Integer> elementary_divisors);

  std::size_t ambient_rank() const noexcept { return basis_.rows(); }
  std::size_t rank() const noexcept { return basis_.cols(); }
  // Columns: a basis of the generated group, in ambient coordinates.
  const IntegerMatrix& basis() const noexcept { return basis_; }
  const std::vector<Integer>& elementary_divisors() const noexcept { return divisors_; }
  // Index of the generated group inside the saturated lattice it spans.
  Integer index() const;
  bool is_identity() const;

  // Coordinates of x in the basis; nullopt when x is outside the group.
  std::optional<LatticePoint> to_local(const LatticePoint& x) const;
  LatticePoint to_ambient(const LatticePoint& y) const;

 private:
  IntegerMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
  std::vector<Integer> divisors_;
};

// Coordinate change whose image of the generators generates Z^r. The
// elementary divisors come from a verified Smith normal form; the basis is
// the column Hermite form of the generator matrix. Returns the identity when
// the generators already generate Z^n.
CoordinateChange smith_reindex(std::span<const LatticePoint> generators, std::size_t ambient_rank);

// ---------------------------------------------------------------------------

// Depth-first search for nonnegative integer combinations, pruned by a
// grading that is strictly positive on all generators and, optionally, by
// cone inequalities that every partial sum must satisfy. Results for
// intermediate targets are memoized, so one oracle answering many queries
// behaves like a dynamic program over the explored region.
class MembershipOracle {
 public:
  MembershipOracle(std::vector<LatticePoint> generators, DualVector grading,
                   std::vector<DualVector> cone_normals = {});

  bool contains(const LatticePoint& target);
  // Coefficients per generator (in the order given to the constructor).
  std::optional<std::vector<Integer>> solve(const LatticePoint& target);

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  bool reach(const LatticePoint& target);
  bool admissible(const LatticePoint& residual) const;

  std::vector<LatticePoint> generators_;
  std::vector<std::size_t> order_;  // generator indices by decreasing degree
  DualVector grading_;
  std::vector<DualVector> normals_;
  // -1: unreachable, otherwise index of a generator on a solution path.
  std::unordered_map<LatticePoint, long, IntVectorHash<Space::character>> memo_;
};

// Throws UnsupportedInput when some generator has nonpositive degree.
std::optional<std::vector<Integer>> solve_nonnegative(std::span<const LatticePoint> generators,
                                                      const LatticePoint& target,
                                                      const DualVector& grading);

}  // namespace mltoric
