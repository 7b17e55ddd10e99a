#pragma once

#include "mltoric/monoid.hpp"

namespace samples {

using mltoric::AffineMonoid;

inline AffineMonoid example1() { return AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}); }
inline AffineMonoid example2() { return AffineMonoid(2, {{1, 0}, {0, 2}, {0, 3}}); }
// The full lattice points of the pyramid over the square, generated in height one.
inline AffineMonoid example3() {
  std::vector<mltoric::LatticePoint> g;
  for (long a = -1; a <= 1; ++a)
    for (long b = -1; b <= 1; ++b) g.push_back({1, a, b});
  return AffineMonoid(3, g);
}
inline AffineMonoid example5() { return AffineMonoid(2, {{1, 0}, {1, 2}, {0, 3}, {0, 4}, {0, 5}}); }
inline AffineMonoid affine_space(std::size_t n) {
  std::vector<mltoric::LatticePoint> g;
  for (std::size_t i = 0; i < n; ++i) {
    mltoric::LatticePoint e(n);
    e[i] = 1;
    g.push_back(e);
  }
  return AffineMonoid(n, g);
}
inline AffineMonoid cusp() { return AffineMonoid(1, {{2}, {3}}); }
inline AffineMonoid product() { return AffineMonoid(3, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {0, 0, 1}}); }

inline std::size_t facet_with_normal(const AffineMonoid& p, const mltoric::DualVector& n) {
  for (std::size_t i = 0; i < p.facet_count(); ++i)
    if (p.facet_normal(i) == n) return i;
  throw mltoric::DomainError("no facet with normal " + mltoric::to_string(n));
}

}  // namespace samples
