#pragma once

// Homogeneous derivations of the semigroup algebra K[P] and the operations
// built from them: sums, replicas, conjugation by exponentials.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mltoric/monoid.hpp"

namespace mltoric {

// Finite sum of c * chi^m with nonzero rational c.
class AlgebraElement {
 public:
  using Terms = std::map<LatticePoint, Rational>;

  AlgebraElement() = default;
  explicit AlgebraElement(std::size_t rank) : rank_(rank) {}
  static AlgebraElement monomial(const LatticePoint& m, const Rational& c = 1);
  static AlgebraElement constant(std::size_t rank, const Rational& c);

  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const LatticePoint& m) const;
  void add_term(const LatticePoint& m, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Rational& c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_;
  }

  // "2*x^(1,3) - 1/2*x^(0,0)"; "0" for the zero element.
  std::string to_string() const;

 private:
  std::size_t rank_ = 0;
  Terms terms_;
};

// lambda * d_{rho,e}: chi^m -> lambda * <m, rho> * chi^(m+e).
struct HomogeneousDerivation {
  DualVector rho;
  LatticePoint e;
  Rational lambda = 1;

  AlgebraElement on_monomial(const LatticePoint& m) const;
  friend bool operator==(const HomogeneousDerivation&, const HomogeneousDerivation&) = default;
};

std::string to_string(const HomogeneousDerivation& d);

class Derivation {
 public:
  enum class Kind { zero, homogeneous, sum, replica, conjugate };

  Derivation();  // zero
  static Derivation zero() { return {}; }
  static Derivation homogeneous(HomogeneousDerivation h);
  static Derivation sum(std::vector<Derivation> terms);
  // g -> f * d(g). Unchecked; see DerivationEngine::replica.
  static Derivation replica(AlgebraElement f, Derivation d);
  // exp(t * by) o d o exp(-t * by).
  static Derivation conjugate(Derivation by, Rational t, Derivation d);

  Kind kind() const noexcept;
  const HomogeneousDerivation& as_homogeneous() const;
  const std::vector<Derivation>& children() const;
  const AlgebraElement& factor() const;
  const Rational& parameter() const;

  std::string describe() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

enum class AlgebraMode {
  strict,         // supports inside P
  normalization,  // supports inside the saturation of P
  laurent         // no restriction
};

std::string to_string(AlgebraMode m);

// Nilpotency of a homogeneous derivation on one monomial, decided exactly:
// d^k(chi^m) is a multiple of prod_{i<k} <m + i e, rho>.
struct MonomialNilpotency {
  bool nilpotent = false;
  std::size_t index = 0;  // least k with d^k(chi^m) = 0, when nilpotent
};
MonomialNilpotency homogeneous_nilpotency(const HomogeneousDerivation& d, const LatticePoint& m);

struct SampleOutcome {
  LatticePoint monomial;
  std::optional<std::size_t> index;  // nilpotency index of the sum, if found
  Integer layer;
};

struct LayerProfile {
  Integer layer;
  std::size_t samples = 0;
  std::size_t max_index = 0;
  friend bool operator==(const LayerProfile&, const LayerProfile&) = default;
};

struct SliceSumReport {
  LatticePoint slice;
  bool slice_preserved = false;   // (d + d')(chi^s) == 1
  bool slice_in_kernel = false;   // d'(chi^s) == 0
  bool layers_consistent = true;  // d keeps the layer, d' lowers it by one
  bool all_nilpotent = true;
  std::optional<DualVector> layer_functional;
  std::vector<SampleOutcome> samples;
  std::vector<LayerProfile> layers;

  bool passed() const { return slice_preserved && slice_in_kernel && layers_consistent && all_nilpotent; }
};

class DerivationEngine {
 public:
  DerivationEngine(AffineMonoid monoid, AlgebraMode mode = AlgebraMode::strict,
                   std::size_t max_iter = 64);

  const AffineMonoid& monoid() const noexcept { return monoid_; }
  AlgebraMode mode() const noexcept { return mode_; }
  std::size_t max_iter() const noexcept { return max_iter_; }

  bool in_algebra(const LatticePoint& m) const;
  // Throws ClosureError naming the first monomial outside the algebra.
  void require_in_algebra(const AlgebraElement& f, const std::string& context) const;

  // Throws ClosureError when the image leaves the algebra, DimensionError on
  // rank mismatch.
  AlgebraElement apply(const Derivation& d, const AlgebraElement& f) const;
  AlgebraElement apply(const HomogeneousDerivation& d, const AlgebraElement& f) const;

  // Least k <= limit with d^k(f) = 0 (limit defaults to max_iter).
  std::optional<std::size_t> nilpotency_index(const Derivation& d, const AlgebraElement& f,
                                              std::optional<std::size_t> limit = {}) const;

  // exp(t d)(f). Throws DomainError when d is not nilpotent on f within
  // max_iter.
  AlgebraElement exponential(const Derivation& d, const Rational& t, const AlgebraElement& f) const;

  // g -> f * d(g); throws DomainError unless d(f) == 0.
  Derivation replica(const AlgebraElement& f, const Derivation& d) const;

  // The sum d + d' on samples, where d has slice chi^slice.
  SliceSumReport sum_with_slice_check(const HomogeneousDerivation& d, const LatticePoint& slice,
                                      const Derivation& other,
                                      const std::vector<LatticePoint>& samples) const;

  // d(chi^m) == 0 for all m of the algebra on the face with degree <= bound.
  // On failure the first offending monomial is stored in `counterexample`.
  bool vanishes_on_face(const Derivation& d, const MFace& face, const Integer& bound,
                        LatticePoint* counterexample = nullptr) const;

 private:
  AlgebraElement apply_unchecked(const Derivation& d, const AlgebraElement& f) const;

  AffineMonoid monoid_;
  AlgebraMode mode_;
  std::size_t max_iter_;
};

}  // namespace mltoric
