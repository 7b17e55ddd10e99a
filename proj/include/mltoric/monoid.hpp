#pragma once

// Affine monoids P in Z^n: membership, saturation, holes and the
// saturation status of facets of the cone generated by P.
//
// All coordinates are taken in the lattice generated by P. When the input
// generators generate Z^n this is the input lattice itself; otherwise the
// generators are rewritten once at construction (see coordinate_change()).

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mltoric/cone.hpp"
#include "mltoric/lattice.hpp"

namespace mltoric {

using MCone = RationalCone<Space::character>;
using NCone = RationalCone<Space::cocharacter>;
using MFace = Face<Space::character>;

struct Certificate {
  enum class Kind { exact, bounded, heuristic_window };
  Kind kind = Kind::exact;
  Integer parameter = 0;

  static Certificate exact() { return {}; }
  static Certificate bounded(Integer b) { return {Kind::bounded, std::move(b)}; }
  static Certificate window(Integer k) { return {Kind::heuristic_window, std::move(k)}; }

  bool is_exact() const noexcept { return kind == Kind::exact; }
  // "exact", "bounded(B)" or "heuristic-window(K)".
  std::string tag() const;
  static Certificate parse(const std::string& tag);

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// The weaker of two certificates (exact < bounded < heuristic window).
Certificate weakest(const Certificate& a, const Certificate& b);

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

// Holes base + k * step * direction for all k >= 0.
struct HoleFamily {
  LatticePoint base;
  LatticePoint direction;
  Integer step = 1;
  std::size_t facet = 0;  // index of the facet containing `direction`
  Certificate certificate;

  bool contains(const LatticePoint& x) const;
  friend bool operator==(const HoleFamily&, const HoleFamily&) = default;
};

struct HoleInventory {
  Integer bound;
  std::vector<LatticePoint> holes;  // lexicographic
  std::vector<HoleFamily> families;
};

struct SaturationVerdict {
  Verdict status = Verdict::inconclusive;
  // yes: the tested point; no: a hole in p + cone.
  std::optional<LatticePoint> witness;
  Certificate certificate;
};

enum class FacetStatus { saturated, almost_saturated, nowhere_saturated, inconclusive };
std::string to_string(FacetStatus s);
FacetStatus facet_status_from_string(const std::string& s);

struct FacetSaturation {
  FacetStatus status = FacetStatus::inconclusive;
  // Whether every lattice point of the facet lies in P.
  bool hole_free = false;
  std::optional<LatticePoint> saturation_point;
  std::optional<HoleFamily> family;  // present for nowhere-saturated facets
  Certificate certificate;

  friend bool operator==(const FacetSaturation&, const FacetSaturation&) = default;
};

// Exact hole structure of a rank 2 monoid: every hole lies in one of the
// families or in the isolated list.
struct PlanarHoles {
  // Every hole x has <x, n_f> < strip[f] for some facet f.
  std::array<Integer, 2> strip;
  std::vector<HoleFamily> families;
  std::vector<LatticePoint> isolated;  // holes in no family, lexicographic

  bool is_hole(const LatticePoint& x) const;
};

class AffineMonoid {
 public:
  // Throws DimensionError on length mismatch, DomainError on an empty list
  // and UnsupportedMonoid when P has nonzero units.
  AffineMonoid(std::size_t ambient_rank, std::vector<LatticePoint> generators);

  std::size_t ambient_rank() const noexcept;
  std::size_t rank() const noexcept;
  const std::vector<LatticePoint>& input_generators() const noexcept;
  // Minimal generating set in lattice coordinates, lexicographic.
  const std::vector<LatticePoint>& generators() const noexcept;
  const CoordinateChange& coordinate_change() const noexcept;

  const MCone& cone() const noexcept;        // sigma-dual, spanned by P
  const NCone& dual() const noexcept;        // sigma
  const DualVector& grading() const noexcept;

  std::size_t facet_count() const noexcept;
  MFace facet(std::size_t i) const;
  // Primitive inner normal of facet i, i.e. the ray of sigma dual to it.
  const DualVector& facet_normal(std::size_t i) const;

  Integer degree(const LatticePoint& m) const;
  Integer max_generator_degree() const;
  Integer default_degree_bound() const;

  bool contains(const LatticePoint& m) const;
  std::optional<std::vector<Integer>> decompose(const LatticePoint& m) const;
  bool in_saturation(const LatticePoint& m) const;
  bool is_hole(const LatticePoint& m) const { return in_saturation(m) && !contains(m); }
  bool is_saturated() const;

  HoleInventory holes_up_to(const Integer& bound) const;
  // Families along facet directions. Exact in rank 2; otherwise a family
  // is reported when the first `window` translates are holes.
  std::vector<HoleFamily> hole_families(const Integer& bound, std::size_t window) const;

  // Throws DomainError when p is not in P. Exact in every rank.
  SaturationVerdict is_saturation_point(const LatticePoint& p) const;
  bool face_is_hole_free(const MFace& face) const;
  FacetSaturation facet_saturation_status(std::size_t facet, const Integer& bound,
                                          std::size_t window) const;

  // Rank 2 only.
  const PlanarHoles* planar_holes() const noexcept;
  // Least k >= 1 with h + k * u in P, where u is the primitive ray on the
  // facet; nullopt when there is none. Rank 2 only, exact.
  std::optional<Integer> planar_series_break(std::size_t facet, const LatticePoint& h) const;

  // Points of the cone with degree <= bound.
  std::vector<LatticePoint> cone_points_up_to(const Integer& bound) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct Bounds {
  std::optional<Integer> degree_bound;  // default: 12 * max generator degree
  std::size_t family_window = 8;
  Integer root_height = 6;
  std::size_t max_iter = 64;

  Integer degree_for(const AffineMonoid& p) const {
    return degree_bound ? *degree_bound : p.default_degree_bound();
  }
};

// Worker threads for parallel enumeration; ML_TORIC_THREADS caps it.
std::size_t worker_threads();

}  // namespace mltoric
