#pragma once

// Independent checks: brute-force sum enumeration, descent by direct
// application, and the property suite behind `mltoric check`.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mltoric/invariants.hpp"

namespace mltoric::oracles {

// All sums of generators with degree <= bound, built by closure.
std::set<LatticePoint> sums_up_to(const std::vector<LatticePoint>& generators, const DualVector& grading,
                                  const Integer& bound);

// Holes of degree <= bound from the closure above.
std::vector<LatticePoint> holes_by_closure(const AffineMonoid& p, const Integer& bound);

// The root derivation maps every monomial of P of degree <= bound into K[P].
// Fills `witness` with the first monomial whose image is a hole.
bool descends_up_to(const AffineMonoid& p, std::size_t ray, const LatticePoint& e, const Integer& bound,
                    LatticePoint* witness = nullptr);

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ShadowCounts {
  std::size_t roots = 0;
  std::size_t replicas = 0;
  std::size_t sums = 0;
  std::size_t conjugates = 0;
  std::size_t monomials = 0;  // ML-face monomials tested
  std::size_t failures = 0;
  std::string first_failure;
};

// Every derivation built from descended roots (replicas, two-term sums,
// conjugates by exponentials) vanishes on the ML-face monomials of degree
// <= bound.
ShadowCounts ml_face_shadow(const AffineMonoid& p, const InvariantReport& r, const Integer& bound,
                            std::uint32_t seed, std::size_t replicas = 30, std::size_t sums = 10,
                            std::size_t conjugates = 10);

// For every slice derivation and every descended root of another almost
// saturated facet killing the slice, the sum is nilpotent with the slice
// on all monomials of degree <= bound.
PropertyResult slice_sum_check(const AffineMonoid& p, const InvariantReport& r, const Integer& bound,
                               std::size_t max_iter);

std::vector<PropertyResult> property_suite(const AffineMonoid& p, const Bounds& bounds,
                                           std::uint32_t seed = 1);

}  // namespace mltoric::oracles
