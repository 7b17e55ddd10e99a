#pragma once

// Makar-Limanov data of an affine monoid: the face cut out by the almost
// saturated facets, the face spanned by the non-affine rays, the splitting
// off of affine factors and the rigidity verdicts.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mltoric/demazure.hpp"
#include "mltoric/monoid.hpp"

namespace mltoric {

struct FaceSummary {
  std::vector<std::size_t> rays;
  std::vector<LatticePoint> ray_vectors;
  std::size_t dimension = 0;

  static FaceSummary of(const MFace& face);
  friend bool operator==(const FaceSummary&, const FaceSummary&) = default;
};

struct AffineRay {
  std::size_t facet = 0;  // the affine facet the ray is attached to
  std::size_t ray = 0;    // index into the cone rays
  LatticePoint vector;
  friend bool operator==(const AffineRay&, const AffineRay&) = default;
};

struct Splitting {
  std::size_t k = 0;
  std::vector<AffineRay> affine_rays;
  FaceSummary core_face;
  std::size_t core_rank = 0;
  // Generators of P on the core face, in coordinates of the lattice they
  // generate; empty for the zero monoid.
  std::vector<LatticePoint> core_generators;
  // The same generators in the coordinates of P.
  std::vector<LatticePoint> core_generators_ambient;
  friend bool operator==(const Splitting&, const Splitting&) = default;
};

struct InvariantReport {
  std::string name;
  std::size_t ambient_rank = 0;
  std::vector<LatticePoint> input_generators;
  std::size_t rank = 0;
  std::vector<LatticePoint> generators;
  Integer lattice_index = 1;
  DualVector grading;
  std::vector<LatticePoint> cone_rays;

  Integer degree_bound;
  std::size_t family_window = 0;
  Integer root_height;
  std::size_t max_iter = 0;

  std::vector<FacetClassification> facets;
  std::vector<std::size_t> almost_saturated;
  std::optional<FaceSummary> ml_face;
  std::optional<FaceSummary> ml_star_face;
  bool no_slice = false;
  std::optional<Splitting> splitting;

  std::optional<bool> is_rigid_core;
  std::optional<bool> is_affine_space;
  std::optional<bool> ml_equals_ml_star;
  std::optional<bool> is_rigid;  // no homogeneous LND at all

  bool complete = true;
  Certificate certificate;
  std::vector<std::string> notes;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

// Intersection of the almost saturated facets; the whole cone when there are
// none. nullopt when some facet status is inconclusive.
std::optional<MFace> ml_face(const AffineMonoid& p, const std::vector<FacetClassification>& facets);

// Face spanned by the non-affine rays; nullopt when no facet carries a
// slice derivation.
std::optional<MFace> ml_star_face(const AffineMonoid& p,
                                  const std::vector<FacetClassification>& facets);

// Throws InternalInconsistency when a generator fails to split as a core
// part in P plus a nonnegative combination of the affine rays.
Splitting split_affine_factor(const AffineMonoid& p, const std::vector<FacetClassification>& facets);

// x lies in P iff its affine coordinates are nonnegative and its core part
// lies in the core monoid.
bool in_split_monoid(const AffineMonoid& p, const Splitting& s, const LatticePoint& x);

std::vector<FacetClassification> classify_facets(const AffineMonoid& p, const Bounds& bounds);

InvariantReport analyze(const AffineMonoid& p, const Bounds& bounds, const std::string& name = "",
                        bool exact_only = false);

}  // namespace mltoric
