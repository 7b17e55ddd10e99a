#pragma once

// Demazure roots, descent of root derivations to K[P], and the affine
// facet / affine ray classification.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mltoric/derivation.hpp"
#include "mltoric/monoid.hpp"

namespace mltoric {

// Ray i of sigma is the ray dual to facet i of the monoid cone.
struct DemazureRoot {
  std::size_t ray = 0;
  LatticePoint e;
  friend bool operator==(const DemazureRoot&, const DemazureRoot&) = default;
};

bool is_demazure_root(const NCone& sigma, std::size_t ray, const LatticePoint& e);

// Roots e with <e, n_ray> = -1 and 0 <= <e, n> <= height for the other rays
// n, lexicographic. Throws DomainError for a non-pointed or lower
// dimensional sigma.
std::vector<DemazureRoot> demazure_roots(const NCone& sigma, std::size_t ray, const Integer& height);

HomogeneousDerivation root_derivation(const AffineMonoid& p, const DemazureRoot& root);

struct DescentVerdict {
  Verdict status = Verdict::inconclusive;
  // On failure: a generator g of P with g + e a hole.
  std::optional<LatticePoint> witness;
  Certificate certificate;
};

// Exact: d_e preserves K[P] iff g + e lies in P for every generator g with
// <g, n_ray> > 0.
DescentVerdict descends(const AffineMonoid& p, const DemazureRoot& root);

struct AffineRayTest {
  Verdict verdict = Verdict::inconclusive;
  LatticePoint ray;  // primitive vector r of the ray off the facet
  bool in_monoid = false;
  Integer pairing;  // <r, n_F>
  bool holes_persist = false;
  std::optional<LatticePoint> hole;  // hole on F whose series h + k r breaks
  std::optional<Integer> break_at;   // least k with h + k r in P
  std::string reason;
  Certificate certificate;

  friend bool operator==(const AffineRayTest&, const AffineRayTest&) = default;
};

struct SliceDerivation {
  HomogeneousDerivation derivation;
  LatticePoint slice;
  friend bool operator==(const SliceDerivation&, const SliceDerivation&) = default;
};

struct FacetClassification {
  std::size_t facet = 0;
  DualVector normal;
  std::vector<std::size_t> rays;  // indices of the cone rays on the facet
  FacetSaturation saturation;
  Verdict affine = Verdict::inconclusive;
  // Affine with every lattice point of the facet in P.
  bool affine_strict = false;
  std::size_t others_dimension = 0;  // dimension of the intersection of the other facets
  std::optional<std::size_t> distinguished_ray;
  std::optional<AffineRayTest> affine_ray;
  std::optional<SliceDerivation> slice;
  std::optional<std::string> note;
  Certificate certificate;

  friend bool operator==(const FacetClassification&, const FacetClassification&) = default;
};

// The face cut out by all facets other than `facet`.
MFace other_facets_face(const AffineMonoid& p, std::size_t facet);

Verdict is_affine_facet(const AffineMonoid& p, std::size_t facet, const Bounds& bounds);

// Throws DomainError unless the facet is affine.
AffineRayTest is_affine_ray(const AffineMonoid& p, std::size_t facet, const Bounds& bounds);

std::optional<SliceDerivation> slice_derivation_for_facet(const AffineMonoid& p, std::size_t facet,
                                                          const Bounds& bounds);

FacetClassification classify_facet(const AffineMonoid& p, std::size_t facet, const Bounds& bounds);

}  // namespace mltoric
