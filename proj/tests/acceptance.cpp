// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mltoric/report.hpp"
#include "oracles.hpp"

using namespace mltoric;

namespace {

struct Fixture {
  std::string name;
  MonoidInput input;
  AffineMonoid monoid;
};

Fixture load(const std::string& name) {
  std::ifstream in(std::string(MLTORIC_FIXTURES) + "/" + name + ".json");
  std::stringstream s;
  s << in.rdbuf();
  MonoidInput doc = parse_input(s.str());
  return {name, doc, AffineMonoid(doc.rank, doc.generators)};
}

// Collects failed expectations of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::size_t facet_with_normal(const AffineMonoid& p, const DualVector& n) {
  for (std::size_t i = 0; i < p.facet_count(); ++i)
    if (p.facet_normal(i) == n) return i;
  throw DomainError("no facet with normal " + to_string(n));
}

bool all_exact(const InvariantReport& r) {
  if (!r.certificate.is_exact()) return false;
  for (const auto& c : r.facets)
    if (!c.certificate.is_exact() || !c.saturation.certificate.is_exact()) return false;
  return true;
}

AlgebraElement mono(const LatticePoint& m, long c = 1) { return AlgebraElement::monomial(m, Rational(c)); }

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
  for (auto name : {"example1", "example4"}) {
    auto f = load(name);
    auto r = analyze(f.monoid, Bounds{});
    const std::string n = name;
    c.expect(r.facets.size() == 2, n + ": two facets");
    for (const auto& fc : r.facets) {
      c.expect(fc.affine == Verdict::yes, n + ": facet " + std::to_string(fc.facet) + " affine");
      c.expect(fc.affine_ray && fc.affine_ray->verdict == Verdict::no,
               n + ": ray of facet " + std::to_string(fc.facet) + " not affine");
      c.expect(fc.affine_ray && fc.affine_ray->pairing == 2, n + ": pairing 2");
      c.expect(!fc.slice, n + ": no slice");
    }
    c.expect(r.ml_face && r.ml_face->dimension == 0, n + ": ml face is the apex");
    c.expect(r.no_slice && !r.ml_star_face, n + ": ml* is the no-slice marker");
  }
  c.summary = "example1/example4: affine facets, non-affine rays, ML = K, no slice";
}

void criterion2(Check& c) {
  auto f = load("example2");
  const auto& p = f.monoid;
  auto r = analyze(p, Bounds{});
  const auto f1 = facet_with_normal(p, DualVector{0, 1});
  const auto f2 = facet_with_normal(p, DualVector{1, 0});
  c.expect(r.facets[f1].saturation.status == FacetStatus::nowhere_saturated, "F1 nowhere saturated");
  c.expect(r.facets[f1].affine == Verdict::no, "F1 not affine");
  c.expect(r.facets[f2].affine == Verdict::yes, "F2 affine");
  c.expect(r.facets[f2].affine_ray && r.facets[f2].affine_ray->verdict == Verdict::yes, "F2 ray affine");
  const auto& s = r.facets[f2].slice;
  c.expect(s && s->slice == LatticePoint{1, 0}, "slice x^(1,0)");
  c.expect(s && s->derivation == HomogeneousDerivation{DualVector{1, 0}, LatticePoint{-1, 0}, 1},
           "slice derivation rho=(1,0), e=(-1,0)");
  if (s) {
    DerivationEngine eng(p);
    const auto d = Derivation::homogeneous(s->derivation);
    c.expect(eng.apply(d, mono({1, 0})) == AlgebraElement::constant(2, 1), "d(x^(1,0)) = 1");
    c.expect(eng.apply(d, mono({3, 2})) == mono({2, 2}, 3), "d(x^(3,2)) = 3 x^(2,2)");
  }
  const auto face2 = p.facet(f2).ray_indices();
  c.expect(r.ml_face && r.ml_face->rays == face2, "ml face = F2");
  c.expect(r.ml_star_face && r.ml_star_face->rays == face2, "ml* face = F2");
  c.expect(r.splitting && r.splitting->k == 1, "k = 1");
  if (r.splitting && r.splitting->core_rank == 1) {
    AffineMonoid core(1, r.splitting->core_generators);
    bool ok = !core.contains(LatticePoint{1});
    for (long v = 0; v <= 30; ++v) ok = ok && (v == 1 || core.contains(LatticePoint{v}));
    c.expect(ok, "core monoid {0,2,3,...}");
  } else {
    c.expect(false, "core monoid has rank 1");
  }
  c.expect(r.is_rigid_core == true, "rigid core");
  c.expect(all_exact(r), "every verdict exact");
  c.summary = "example2: F2 affine with slice x^(1,0), ML = ML* = F2, k = 1, core = cusp, exact";
}

void criterion3(Check& c) {
  auto f = load("example3");
  auto r = analyze(f.monoid, Bounds{});
  c.expect(r.facets.size() == 4, "four facets");
  for (const auto& fc : r.facets) {
    c.expect(fc.saturation.status == FacetStatus::saturated, "facet " + std::to_string(fc.facet) + " saturated");
    c.expect(fc.others_dimension == 0, "other three facets meet in the apex");
    c.expect(fc.affine == Verdict::no, "facet not affine");
  }
  c.expect(r.ml_face && r.ml_face->dimension == 0, "ml face is the apex");
  c.expect(r.no_slice, "no slice");
  c.expect(all_exact(r), "exact");
  c.summary = "example3: four saturated non-affine facets, ML = K, no slice";
}

void criterion4(Check& c) {
  auto f = load("example5");
  const auto& p = f.monoid;
  c.expect(p.holes_up_to(4).holes == std::vector<LatticePoint>{{0, 1}, {0, 2}, {1, 1}, {2, 1}, {3, 1}},
           "holes to degree 4");
  auto r = analyze(p, Bounds{});
  const auto f2 = facet_with_normal(p, DualVector{1, 0});
  const auto& fc = r.facets[f2];
  c.expect(fc.affine_ray.has_value(), "ray test ran on F2");
  if (fc.affine_ray) {
    const auto& t = *fc.affine_ray;
    c.expect(t.verdict == Verdict::no, "ray not affine");
    c.expect(t.ray == LatticePoint{1, 0} && t.in_monoid && t.pairing == 1, "r = (1,0) in P with pairing 1");
    c.expect(t.hole == LatticePoint{0, 2}, "failing hole (0,2)");
    c.expect(t.break_at && p.contains(*t.hole + *t.break_at * t.ray), "series (0,2)+k(1,0) breaks");
  }
  c.expect(r.no_slice, "no slice derivation");
  for (const auto& x : r.facets) c.expect(!x.slice, "no facet carries a slice");
  bool surfaced = !fc.affine_strict && fc.note.has_value();
  bool in_notes = false;
  for (const auto& n : r.notes) in_notes = in_notes || n.find("contains holes") != std::string::npos;
  c.expect(surfaced && in_notes, "affine-facet reading discrepancy surfaced");
  c.summary = "example5: holes listed, ray test fails at hole (0,2), no slice, discrepancy noted";
}

void criterion5(Check& c) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto f = load("a" + std::to_string(n));
    auto r = analyze(f.monoid, Bounds{});
    const std::string tag = "A" + std::to_string(n);
    c.expect(r.ml_face && r.ml_face->dimension == 0, tag + ": ml apex");
    c.expect(r.ml_star_face && r.ml_star_face->dimension == 0, tag + ": ml* apex");
    c.expect(r.splitting && r.splitting->k == n, tag + ": k = n");
    c.expect(r.is_affine_space == true, tag + ": affine space");
  }
  for (auto name : {"example1", "example2", "example3", "example4", "example5", "cusp", "product"}) {
    auto r = analyze(load(name).monoid, Bounds{});
    c.expect(r.is_affine_space != true, std::string(name) + ": not an affine space");
  }
  c.summary = "A1..A3: ML = ML* = K, k = n; no other fixture is an affine space";
}

void criterion6(Check& c) {
  auto f = load("product");
  const auto& p = f.monoid;
  auto r = analyze(p, Bounds{});
  const auto z0 = facet_with_normal(p, DualVector{0, 0, 1});
  c.expect(r.splitting && r.splitting->k == 1, "k = 1");
  c.expect(r.ml_star_face && r.ml_star_face->rays == p.facet(z0).ray_indices(), "ml* = z=0 facet");
  c.expect(r.ml_face && r.ml_face->dimension == 0, "ml face apex");
  c.expect(r.is_rigid_core == false, "core not rigid");
  c.summary = "product: k = 1, ML* = {z=0}, ML = K, core not rigid";
}

void criterion7(Check& c) {
  std::mt19937 rng(2024);
  auto uniform = [&](long a, long b) { return std::uniform_int_distribution<long>(a, b)(rng); };

  // (a) Leibniz
  DerivationEngine lau(load("a2").monoid, AlgebraMode::laurent);
  std::size_t leibniz = 0;
  for (int i = 0; i < 120; ++i) {
    HomogeneousDerivation d{DualVector{uniform(-3, 3), uniform(-3, 3)}, LatticePoint{uniform(-2, 2), uniform(-2, 2)},
                            Rational(uniform(-4, 4)) / 3};
    auto f = mono({uniform(0, 5), uniform(0, 5)}, uniform(1, 4)) + mono({uniform(0, 5), uniform(0, 5)});
    auto g = mono({uniform(0, 5), uniform(0, 5)}, uniform(-3, 3));
    c.expect(lau.apply(d, f * g) == f * lau.apply(d, g) + lau.apply(d, f) * g, "Leibniz");
    ++leibniz;
  }

  // (b) nilpotency index of descended roots
  std::size_t samples = 0;
  for (auto name : {"example2", "a2", "a3", "product", "example1"}) {
    auto f = load(name);
    DerivationEngine eng(f.monoid);
    std::vector<LatticePoint> points;
    for (const auto& m : f.monoid.cone_points_up_to(6))
      if (f.monoid.contains(m)) points.push_back(m);
    for (std::size_t ray = 0; ray < f.monoid.facet_count(); ++ray)
      for (const auto& root : demazure_roots(f.monoid.dual(), ray, 2)) {
        if (descends(f.monoid, root).status != Verdict::yes) continue;
        const auto d = Derivation::homogeneous(root_derivation(f.monoid, root));
        for (std::size_t k = 0; k < 3; ++k) {
          const auto& m = points[static_cast<std::size_t>(uniform(0, static_cast<long>(points.size()) - 1))];
          const Integer expect = pairing(m, f.monoid.facet_normal(ray)) + 1;
          const auto got = eng.nilpotency_index(d, mono(m));
          c.expect(got && Integer(static_cast<unsigned long>(*got)) == expect, "index <m,n>+1 at " + to_string(m));
          ++samples;
        }
      }
  }
  c.expect(samples >= 50, "at least 50 nilpotency samples");

  // (c) group law, (d) multiplicativity
  DerivationEngine a2(load("a2").monoid);
  std::size_t group = 0, mult = 0;
  for (int i = 0; i < 25; ++i) {
    const auto d = Derivation::homogeneous({DualVector{1, 0}, LatticePoint{-1, uniform(0, 3)}, 1});
    const Rational s = Rational(uniform(-6, 6)) / 2, t = Rational(uniform(-6, 6)) / 3;
    const auto f = mono({uniform(0, 4), uniform(0, 4)});
    c.expect(a2.exponential(d, t, a2.exponential(d, s, f)) == a2.exponential(d, s + t, f), "exp group law");
    ++group;
    const auto g = mono({uniform(0, 4), uniform(0, 4)}, 2);
    c.expect(a2.exponential(d, t, f * g) == a2.exponential(d, t, f) * a2.exponential(d, t, g),
             "exp multiplicative");
    ++mult;
  }

  // (e) slice plus another derivation
  std::size_t slice_sums = 0;
  for (const AffineMonoid& p : {load("a2").monoid, load("example2").monoid,
                                AffineMonoid(3, {{1, 0, 0}, {0, 2, 0}, {0, 3, 0}, {0, 0, 1}})}) {
    const auto r = analyze(p, Bounds{});
    const auto res = oracles::slice_sum_check(p, r, Integer(6), 64);
    c.expect(res.passed, "slice sum: " + res.detail);
    ++slice_sums;
  }
  {
    const auto p = load("a2").monoid;
    DerivationEngine eng(p);
    std::vector<LatticePoint> pts = p.cone_points_up_to(6);
    const auto rep = eng.replica(mono({0, 2}), Derivation::homogeneous({DualVector{1, 0}, LatticePoint{-1, 0}, 1}));
    c.expect(eng.sum_with_slice_check({DualVector{0, 1}, LatticePoint{0, -1}, 1}, LatticePoint{0, 1}, rep, pts).passed(),
             "slice plus replica on A2");
  }
  c.summary = std::to_string(leibniz) + " Leibniz pairs, " + std::to_string(samples) + " index samples, " +
              std::to_string(group) + " group-law and " + std::to_string(mult) +
              " multiplicativity samples, slice sums on A2, example2, example2 x A1";
}

void criterion8(Check& c) {
  std::size_t total_monomials = 0, with_roots = 0;
  for (auto name : {"example1", "example2", "example3", "example4", "example5", "a1", "a2", "a3", "cusp", "product"}) {
    auto f = load(name);
    auto r = analyze(f.monoid, Bounds{});
    auto s = oracles::ml_face_shadow(f.monoid, r, Integer(10), 17);
    c.expect(s.failures == 0, std::string(name) + ": " + s.first_failure);
    if (s.roots > 0) {
      ++with_roots;
      c.expect(s.replicas >= 30 && s.sums >= 10 && s.conjugates >= 10, std::string(name) + ": sample counts");
    }
    total_monomials += s.monomials;
  }
  c.summary = std::to_string(with_roots) + " fixtures with descended roots, " + std::to_string(total_monomials) +
              " ML-face monomials, no exceptions";
}

void criterion9(Check& c) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> coord(0, 6), count(2, 5);
  std::size_t accepted = 0, tried = 0, with_slice = 0;
  while (accepted < 200 && tried < 20000) {
    ++tried;
    std::vector<LatticePoint> gens;
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
      LatticePoint g{coord(rng), coord(rng)};
      if (!g.is_zero() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    std::optional<AffineMonoid> p;
    try {
      p.emplace(2, gens);
    } catch (const UnsupportedMonoid&) {
      continue;
    }
    if (p->rank() != 2) continue;
    ++accepted;
    const auto r = analyze(*p, Bounds{});
    const std::string tag = "generators";
    std::string gs;
    for (const auto& g : gens) gs += to_string(g);
    c.expect(r.complete && all_exact(r), "rank 2 analysis exact for " + gs);
    if (r.ml_face && r.ml_star_face) {
      const auto a = p->cone().face_spanned_by(r.ml_face->rays);
      const auto b = p->cone().face_spanned_by(r.ml_star_face->rays);
      c.expect(a.is_subface_of(b), "ml face in ml* face for " + gs);
      ++with_slice;
    }
    if (r.splitting) {
      std::vector<std::vector<Integer>> rows;
      for (const auto& ar : r.splitting->affine_rays) rows.push_back(ar.vector.coords());
      c.expect(rows.size() <= 2 && rank_of(rows, 2) == rows.size(), "independent affine rays for " + gs);
      for (const auto& m : p->cone_points_up_to(12))
        if (in_split_monoid(*p, *r.splitting, m) != p->contains(m)) {
          c.expect(false, "splitting membership at " + to_string(m) + " for " + gs);
          break;
        }
    }
    c.expect(report_to_json(r) == report_to_json(analyze(*p, Bounds{})), "determinism for " + gs);
  }
  c.expect(accepted == 200, "200 admissible monoids");
  c.summary = std::to_string(accepted) + " random monoids (" + std::to_string(tried) + " drawn), " +
              std::to_string(with_slice) + " with a slice";
}

void criterion10(Check& c) {
  std::size_t points = 0;
  for (auto name : {"example1", "example2", "example3", "example4", "example5", "a1", "a2", "a3", "cusp", "product"}) {
    auto f = load(name);
    const auto& p = f.monoid;
    c.expect(p.coordinate_change().is_identity(), std::string(name) + ": generators span the lattice");
    const auto sums = oracles::sums_up_to(f.input.generators, p.grading(), Integer(12));
    std::vector<LatticePoint> probe = p.cone_points_up_to(12);
    for (const auto& g : f.input.generators) probe.push_back(-g);
    for (const auto& m : probe) {
      const bool direct = solve_nonnegative(f.input.generators, m, p.grading()).has_value();
      c.expect(direct == (sums.count(m) > 0), std::string(name) + ": membership of " + to_string(m));
      ++points;
    }
  }
  c.summary = std::to_string(points) + " points on 10 fixtures up to degree 12";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Check&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i](c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << c.summary;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << " (" << t.str() << " s)\n";
    for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << "    " << c.failures[k] << "\n";
    if (c.failures.size() > 5) std::cout << "    ... " << c.failures.size() - 5 << " more\n";
  }
  return all ? 0 : 1;
}
