#include <optional>
#include <random>

#include "doctest.h"
#include "mltoric/monoid.hpp"

using namespace mltoric;

namespace {

AffineMonoid example1() { return AffineMonoid(2, {{1, 0}, {1, 1}, {1, 2}}); }
AffineMonoid example2() { return AffineMonoid(2, {{1, 0}, {0, 2}, {0, 3}}); }
AffineMonoid example5() { return AffineMonoid(2, {{1, 0}, {1, 2}, {0, 3}, {0, 4}, {0, 5}}); }

}  // namespace

TEST_CASE("membership and saturation on the second example") {
  auto p = example2();
  CHECK(p.contains(LatticePoint{3, 2}));
  CHECK_FALSE(p.contains(LatticePoint{2, 1}));
  CHECK(p.contains(LatticePoint{0, 0}));
  CHECK(p.in_saturation(LatticePoint{2, 1}));
  CHECK(p.grading() == DualVector{1, 1});
  CHECK_FALSE(p.is_saturated());
}

TEST_CASE("first example is saturated") {
  auto p = example1();
  CHECK(p.is_saturated());
  CHECK_FALSE(p.in_saturation(LatticePoint{1, 3}));
  CHECK(p.holes_up_to(Integer(20)).holes.empty());
  CHECK(p.hole_families(Integer(20), 8).empty());
}

TEST_CASE("hole lists to degree four") {
  auto h2 = example2().holes_up_to(Integer(4)).holes;
  CHECK(h2 == std::vector<LatticePoint>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  auto h5 = example5().holes_up_to(Integer(4)).holes;
  CHECK(h5 == std::vector<LatticePoint>{{0, 1}, {0, 2}, {1, 1}, {2, 1}, {3, 1}});
}

TEST_CASE("planar hole structure") {
  auto p = example2();
  const auto* ph = p.planar_holes();
  REQUIRE(ph);
  REQUIRE(ph->families.size() == 1);
  CHECK(ph->families[0].base == LatticePoint{0, 1});
  CHECK(ph->families[0].direction == LatticePoint{1, 0});
  CHECK(ph->isolated.empty());

  auto q = example5();
  const auto* qh = q.planar_holes();
  REQUIRE(qh);
  REQUIRE(qh->families.size() == 1);
  CHECK(qh->families[0].base == LatticePoint{0, 1});
  CHECK(qh->isolated == std::vector<LatticePoint>{{0, 2}});
  CHECK(q.planar_series_break(0, LatticePoint{0, 2}) == Integer(1));
  CHECK_FALSE(q.planar_series_break(0, LatticePoint{0, 1}));
}

TEST_CASE("saturation points") {
  auto p = example2();
  CHECK(p.is_saturation_point(LatticePoint{0, 2}).status == Verdict::yes);
  auto no = p.is_saturation_point(LatticePoint{1, 0});
  CHECK(no.status == Verdict::no);
  REQUIRE(no.witness);
  CHECK(no.witness->operator[](1) == 1);
  CHECK_THROWS_AS(p.is_saturation_point(LatticePoint{0, 1}), DomainError);
  CHECK(example1().is_saturation_point(LatticePoint{0, 0}).status == Verdict::yes);
}

TEST_CASE("facet statuses") {
  auto p = example2();
  auto f1 = p.facet_saturation_status(0, Integer(24), 8);
  CHECK(f1.status == FacetStatus::nowhere_saturated);
  CHECK(f1.hole_free);
  CHECK(f1.certificate.is_exact());
  auto f2 = p.facet_saturation_status(1, Integer(24), 8);
  CHECK(f2.status == FacetStatus::almost_saturated);
  CHECK(f2.saturation_point == LatticePoint{0, 2});

  auto q = example5();
  auto g2 = q.facet_saturation_status(1, Integer(24), 8);
  CHECK(g2.status == FacetStatus::almost_saturated);
  CHECK(g2.saturation_point == LatticePoint{0, 3});

  AffineMonoid pyramid(3, {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}, {1, 0, 0}});
  CHECK(pyramid.facet_count() == 4);
  for (std::size_t f = 0; f < 4; ++f)
    CHECK(pyramid.facet_saturation_status(f, Integer(12), 8).status == FacetStatus::saturated);
}

TEST_CASE("construction errors and reindexing") {
  CHECK_THROWS_AS(AffineMonoid(1, {{1}, {-1}}), UnsupportedMonoid);
  CHECK_THROWS_AS(AffineMonoid(2, {{1, 0}, {1}}), DimensionError);
  AffineMonoid even(2, {{2, 0}, {0, 2}});
  CHECK(even.rank() == 2);
  CHECK(even.coordinate_change().index() == 4);
  CHECK(even.is_saturated());
  AffineMonoid flat(2, {{1, 1}, {2, 2}});
  CHECK(flat.rank() == 1);
  AffineMonoid cusp(1, {{2}, {3}});
  CHECK(cusp.holes_up_to(Integer(10)).holes == std::vector<LatticePoint>{{1}});
  CHECK(cusp.facet_saturation_status(0, Integer(10), 8).status == FacetStatus::nowhere_saturated);
  AffineMonoid redundant(2, {{1, 0}, {0, 1}, {1, 1}, {2, 3}});
  CHECK(redundant.generators().size() == 2);
}

TEST_CASE("planar hole structure matches direct enumeration on random monoids") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> coord(0, 6), count(2, 5);
  int tested = 0;
  while (tested < 60) {
    std::vector<LatticePoint> gens;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) gens.push_back(LatticePoint{coord(rng), coord(rng)});
    std::optional<AffineMonoid> p;
    try {
      p.emplace(2, gens);
    } catch (const Error&) {
      continue;
    }
    if (p->rank() != 2) continue;
    ++tested;
    const auto* ph = p->planar_holes();
    REQUIRE(ph);
    const Integer bound = 4 * p->max_generator_degree();
    for (const auto& x : p->cone_points_up_to(bound)) CHECK(ph->is_hole(x) == !p->contains(x));
    for (std::size_t f = 0; f < 2; ++f) {
      auto st = p->facet_saturation_status(f, bound, 8);
      CHECK(st.certificate.is_exact());
      if (st.status == FacetStatus::nowhere_saturated) {
        REQUIRE(st.family);
        CHECK(p->is_hole(st.family->base));
      } else {
        REQUIRE(st.saturation_point);
        CHECK(p->facet(f).contains(*st.saturation_point));
      }
    }
  }
}
