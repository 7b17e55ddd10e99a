#include <random>

#include "doctest.h"
#include "mltoric/derivation.hpp"
#include "samples.hpp"

using namespace mltoric;
using samples::example2;

namespace {

using M = AlgebraElement;

HomogeneousDerivation x_slice() { return {DualVector{1, 0}, LatticePoint{-1, 0}, 1}; }
HomogeneousDerivation y_slice() { return {DualVector{0, 1}, LatticePoint{0, -1}, 1}; }

M mono(long a, long b, long c = 1) { return M::monomial(LatticePoint{a, b}, Rational(c)); }

// Direct expansion of exp(t d) on a monomial for d = d_{rho,e}; independent
// of the engine.
M expand_exp(const HomogeneousDerivation& d, const Rational& t, const LatticePoint& m) {
  M out(m.size());
  LatticePoint cur = m;
  Rational coeff = 1;
  for (std::size_t k = 0; k < 200; ++k) {
    if (coeff == 0) return out;
    out.add_term(cur, coeff);
    Rational f = d.lambda * Rational(pairing(cur, d.rho));
    coeff *= f * t / Rational(static_cast<unsigned long>(k + 1));
    cur = cur + d.e;
  }
  FAIL("expansion did not terminate");
  return out;
}

}  // namespace

TEST_CASE("algebra elements") {
  M a = mono(1, 0, 2) + mono(0, 0);
  CHECK(a.to_string() == "2*x^(1,0) + 1*x^(0,0)");
  CHECK((a - a).is_zero());
  CHECK((a * a).coefficient(LatticePoint{1, 0}) == 4);
  CHECK((a * a).coefficient(LatticePoint{2, 0}) == 4);
  CHECK(M(2).to_string() == "0");
  CHECK((Rational(1, 2) * a).coefficient(LatticePoint{0, 0}) == Rational(1, 2));
}

TEST_CASE("applying the horizontal root derivation") {
  DerivationEngine eng(example2());
  CHECK(eng.apply(x_slice(), mono(2, 3)) == mono(1, 3, 2));
  CHECK(eng.apply(x_slice(), mono(0, 5)).is_zero());
  CHECK(eng.apply(x_slice(), mono(1, 0)) == M::constant(2, 1));
}

TEST_CASE("closure violations name the monomial") {
  DerivationEngine eng(example2());
  HomogeneousDerivation bad{DualVector{1, 0}, LatticePoint{-1, 1}, 1};
  try {
    eng.apply(bad, mono(1, 0));
    FAIL("expected a closure error");
  } catch (const ClosureError& e) {
    CHECK(e.monomial() == "(0,1)");
  }
  CHECK_THROWS_AS(eng.apply(x_slice(), mono(0, 1)), ClosureError);
  DerivationEngine norm(example2(), AlgebraMode::normalization);
  CHECK(norm.apply(bad, mono(1, 0)) == mono(0, 1));
  CHECK_THROWS_AS(eng.apply(x_slice(), M::monomial(LatticePoint{1, 0, 0})), DimensionError);
}

TEST_CASE("nilpotency indices") {
  DerivationEngine eng(example2());
  auto d = Derivation::homogeneous(x_slice());
  CHECK(eng.nilpotency_index(d, mono(2, 3)) == 3u);
  CHECK(eng.nilpotency_index(d, mono(0, 3)) == 1u);
  CHECK(eng.nilpotency_index(d, M(2)) == 0u);

  DerivationEngine lau(example2(), AlgebraMode::laurent, 20);
  HomogeneousDerivation semisimple{DualVector{1, 0}, LatticePoint{0, 0}, 1};
  CHECK_FALSE(lau.nilpotency_index(Derivation::homogeneous(semisimple), mono(2, 3)));
  CHECK_FALSE(homogeneous_nilpotency(semisimple, LatticePoint{2, 3}).nilpotent);
  CHECK(homogeneous_nilpotency(semisimple, LatticePoint{0, 3}).index == 1u);
  auto r = homogeneous_nilpotency(x_slice(), LatticePoint{4, 1});
  CHECK(r.nilpotent);
  CHECK(r.index == 5u);
  HomogeneousDerivation up{DualVector{1, 0}, LatticePoint{1, 0}, 1};
  CHECK_FALSE(homogeneous_nilpotency(up, LatticePoint{1, 0}).nilpotent);
}

TEST_CASE("exponentials") {
  DerivationEngine eng(example2());
  auto d = Derivation::homogeneous(x_slice());
  CHECK(eng.exponential(d, 1, mono(2, 0)) == mono(2, 0) + mono(1, 0, 2) + mono(0, 0));
  CHECK(eng.exponential(d, 5, mono(0, 7)) == mono(0, 7));
  for (long s = -3; s <= 3; ++s)
    for (long t = -2; t <= 2; ++t) {
      auto lhs = eng.exponential(d, Rational(t), eng.exponential(d, Rational(s), mono(2, 0)));
      CHECK(lhs == eng.exponential(d, Rational(s + t), mono(2, 0)));
    }
  CHECK(eng.exponential(d, Rational(3, 2), mono(3, 2)) ==
        expand_exp(x_slice(), Rational(3, 2), LatticePoint{3, 2}));

  DerivationEngine lau(example2(), AlgebraMode::laurent, 16);
  HomogeneousDerivation semisimple{DualVector{1, 0}, LatticePoint{0, 0}, 1};
  CHECK_THROWS_AS(lau.exponential(Derivation::homogeneous(semisimple), 1, mono(1, 1)), DomainError);
}

TEST_CASE("replicas") {
  DerivationEngine eng(example2());
  auto d = Derivation::homogeneous(x_slice());
  auto one = eng.replica(M::constant(2, 1), d);
  for (auto m : {mono(2, 0), mono(3, 4), mono(0, 2)}) CHECK(eng.apply(one, m) == eng.apply(d, m));

  auto r = eng.replica(mono(0, 2), d);
  for (long a = 0; a <= 4; ++a)
    for (long b : {0, 2, 3, 5}) {
      M expect = a == 0 ? M(2) : mono(a - 1, b + 2, a);
      CHECK(eng.apply(r, mono(a, b)) == expect);
    }
  CHECK(eng.nilpotency_index(r, mono(2, 0)) == 3u);
  CHECK(eng.apply(r, mono(0, 3)).is_zero());
  CHECK_THROWS_AS(eng.replica(mono(1, 0), d), DomainError);
}

TEST_CASE("conjugation by an exponential") {
  auto a2 = samples::affine_space(2);
  DerivationEngine eng(a2);
  auto dx = Derivation::homogeneous(x_slice());
  auto dy = Derivation::homogeneous({DualVector{0, 1}, LatticePoint{1, -1}, 1});
  auto c = Derivation::conjugate(dx, 1, dy);
  // exp(dx) dy exp(-dx) (y) = exp(dx)(x) = x + 1
  CHECK(eng.apply(c, mono(0, 1)) == mono(1, 0) + M::constant(2, 1));
  CHECK(eng.nilpotency_index(c, mono(0, 1)) == 2u);
  CHECK(eng.apply(Derivation::conjugate(dx, 0, dy), mono(2, 3)) == eng.apply(dy, mono(2, 3)));
}

TEST_CASE("Leibniz rule and homogeneity on random pairs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> small(-3, 3), coord(0, 4);
  DerivationEngine eng(samples::affine_space(2), AlgebraMode::laurent);
  for (int trial = 0; trial < 120; ++trial) {
    HomogeneousDerivation d{DualVector{small(rng), small(rng)}, LatticePoint{small(rng), small(rng)},
                            Rational(small(rng)) / 2};
    M f = mono(coord(rng), coord(rng), small(rng)) + mono(coord(rng), coord(rng));
    M g = mono(coord(rng), coord(rng)) + mono(coord(rng), coord(rng), small(rng));
    CHECK(eng.apply(d, f * g) == f * eng.apply(d, g) + eng.apply(d, f) * g);
    LatticePoint m{coord(rng), coord(rng)};
    const M image = eng.apply(d, M::monomial(m));
    for (const auto& [t, c] : image.terms()) CHECK(t == m + d.e);
  }
}

TEST_CASE("exponentials are multiplicative") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coord(0, 4), tv(-3, 3);
  DerivationEngine eng(samples::affine_space(2));
  auto d = Derivation::homogeneous({DualVector{1, 0}, LatticePoint{-1, 2}, 1});
  for (int trial = 0; trial < 25; ++trial) {
    M f = mono(coord(rng), coord(rng)), g = mono(coord(rng), coord(rng), 3);
    Rational t = Rational(tv(rng)) / 2;
    CHECK(eng.exponential(d, t, f * g) == eng.exponential(d, t, f) * eng.exponential(d, t, g));
  }
}

TEST_CASE("slice plus a derivation of another facet") {
  auto a2 = samples::affine_space(2);
  DerivationEngine eng(a2);
  std::vector<LatticePoint> samples;
  for (const auto& m : a2.cone_points_up_to(6)) samples.push_back(m);

  auto other = Derivation::homogeneous({DualVector{0, 1}, LatticePoint{2, -1}, 1});
  auto rep = eng.sum_with_slice_check(x_slice(), LatticePoint{1, 0}, other, samples);
  CHECK(rep.passed());
  CHECK(rep.layer_functional == DualVector{0, 1});
  CHECK(rep.layers.size() == 7);
  CHECK(rep.samples.size() == samples.size());

  auto zero = eng.sum_with_slice_check(x_slice(), LatticePoint{1, 0}, Derivation::zero(), samples);
  CHECK(zero.passed());
  CHECK_FALSE(zero.layer_functional);

  auto rep2 = eng.replica(mono(0, 2), Derivation::homogeneous(x_slice()));
  auto r = eng.sum_with_slice_check(y_slice(), LatticePoint{0, 1}, rep2, samples);
  CHECK(r.passed());
  CHECK(r.layer_functional == DualVector{1, 0});

  auto bad = Derivation::homogeneous({DualVector{0, 1}, LatticePoint{1, -1}, 1});
  auto broken = eng.sum_with_slice_check(y_slice(), LatticePoint{0, 1}, bad, samples);
  CHECK_FALSE(broken.slice_in_kernel);
  CHECK_FALSE(broken.passed());
}

TEST_CASE("second example: slice plus replicas") {
  auto p = example2();
  DerivationEngine eng(p);
  std::vector<LatticePoint> samples;
  for (const auto& m : p.cone_points_up_to(6))
    if (p.contains(m)) samples.push_back(m);
  auto d = Derivation::homogeneous(x_slice());
  auto rep = eng.sum_with_slice_check(x_slice(), LatticePoint{1, 0}, Derivation::zero(), samples);
  CHECK(rep.passed());
  auto r = eng.replica(mono(0, 3), d);
  CHECK(eng.nilpotency_index(r, mono(3, 2)) == 4u);
}

TEST_CASE("vanishing on faces") {
  auto p = example2();
  DerivationEngine eng(p);
  auto d = Derivation::homogeneous(x_slice());
  const std::size_t f2 = samples::facet_with_normal(p, DualVector{1, 0});
  const std::size_t f1 = samples::facet_with_normal(p, DualVector{0, 1});
  CHECK(eng.vanishes_on_face(d, p.facet(f2), 10));
  LatticePoint bad;
  CHECK_FALSE(eng.vanishes_on_face(d, p.facet(f1), 10, &bad));
  CHECK(bad == LatticePoint{1, 0});
  CHECK_FALSE(eng.vanishes_on_face(d, p.cone().improper_face(), 10));
}

TEST_CASE("derivation descriptions") {
  CHECK(to_string(x_slice()) == "d[rho=(1,0), e=(-1,0)]");
  auto d = Derivation::sum({Derivation::homogeneous(x_slice()), Derivation::zero()});
  CHECK(d.kind() == Derivation::Kind::sum);
  CHECK(d.children().size() == 2);
  CHECK_FALSE(d.describe().empty());
}
