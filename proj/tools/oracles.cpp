#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "mltoric/derivation.hpp"
#include "mltoric/report.hpp"

namespace mltoric::oracles {

std::set<LatticePoint> sums_up_to(const std::vector<LatticePoint>& generators, const DualVector& grading,
                                  const Integer& bound) {
  std::set<LatticePoint> seen;
  if (generators.empty()) return seen;
  std::deque<LatticePoint> queue{LatticePoint(generators[0].size())};
  seen.insert(queue.front());
  while (!queue.empty()) {
    LatticePoint x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      LatticePoint y = x + g;
      if (pairing(y, grading) > bound) continue;
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

std::vector<LatticePoint> holes_by_closure(const AffineMonoid& p, const Integer& bound) {
  const auto sums = sums_up_to(p.generators(), p.grading(), bound);
  std::vector<LatticePoint> out;
  for (const auto& m : p.cone_points_up_to(bound))
    if (!sums.count(m)) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

bool descends_up_to(const AffineMonoid& p, std::size_t ray, const LatticePoint& e, const Integer& bound,
                    LatticePoint* witness) {
  const Integer shift = p.degree(e);
  const auto sums = sums_up_to(p.generators(), p.grading(), shift > 0 ? Integer(bound + shift) : bound);
  const DualVector& n = p.facet_normal(ray);
  std::vector<LatticePoint> ordered(sums.begin(), sums.end());
  std::sort(ordered.begin(), ordered.end(), [&](const LatticePoint& a, const LatticePoint& b) {
    Integer da = p.degree(a), db = p.degree(b);
    return da != db ? da < db : a < b;
  });
  for (const auto& m : ordered) {
    if (p.degree(m) > bound) break;
    if (pairing(m, n) == 0) continue;
    if (!sums.count(m + e)) {
      if (witness) *witness = m;
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<DemazureRoot> descended_roots(const AffineMonoid& p, const Integer& height) {
  std::vector<DemazureRoot> out;
  for (std::size_t f = 0; f < p.facet_count(); ++f)
    for (const auto& root : demazure_roots(p.dual(), f, height))
      if (descends(p, root).status == Verdict::yes) out.push_back(root);
  return out;
}

std::vector<LatticePoint> monoid_points(const AffineMonoid& p, const Integer& bound) {
  std::vector<LatticePoint> out;
  for (const auto& m : p.cone_points_up_to(bound))
    if (p.contains(m)) out.push_back(m);
  return out;
}

MFace face_from_summary(const AffineMonoid& p, const FaceSummary& s) {
  return p.cone().face_spanned_by(s.rays);
}

}  // namespace

ShadowCounts ml_face_shadow(const AffineMonoid& p, const InvariantReport& r, const Integer& bound,
                            std::uint32_t seed, std::size_t replicas, std::size_t sums,
                            std::size_t conjugates) {
  ShadowCounts out;
  if (!r.ml_face) return out;
  const MFace ml = face_from_summary(p, *r.ml_face);
  DerivationEngine eng(p, AlgebraMode::strict, r.max_iter);

  std::vector<LatticePoint> ml_points;
  for (const auto& m : monoid_points(p, bound))
    if (ml.contains(m)) ml_points.push_back(m);
  out.monomials = ml_points.size();

  std::vector<Derivation> pool;
  std::vector<HomogeneousDerivation> homogeneous;
  for (const auto& root : descended_roots(p, r.root_height)) {
    homogeneous.push_back(root_derivation(p, root));
    pool.push_back(Derivation::homogeneous(homogeneous.back()));
  }
  out.roots = pool.size();
  if (pool.empty()) return out;

  std::mt19937 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const auto points = monoid_points(p, Integer(6));

  std::vector<Derivation> built;
  for (std::size_t i = 0; i < replicas; ++i) {
    const std::size_t k = pick(homogeneous.size());
    std::vector<LatticePoint> kernel;
    for (const auto& m : points)
      if (pairing(m, homogeneous[k].rho) == 0) kernel.push_back(m);
    const LatticePoint& f = kernel[pick(kernel.size())];
    built.push_back(eng.replica(AlgebraElement::monomial(f, Rational(1 + static_cast<long>(pick(3)))), pool[k]));
    ++out.replicas;
  }
  for (std::size_t i = 0; i < sums; ++i) {
    built.push_back(Derivation::sum({pool[pick(pool.size())], pool[pick(pool.size())]}));
    ++out.sums;
  }
  for (std::size_t i = 0; i < conjugates; ++i) {
    built.push_back(Derivation::conjugate(pool[pick(pool.size())], Rational(static_cast<long>(pick(5)) - 2),
                                          pool[pick(pool.size())]));
    ++out.conjugates;
  }
  for (auto& d : pool) built.push_back(d);

  for (const auto& d : built)
    for (const auto& m : ml_points) {
      const AlgebraElement image = eng.apply(d, AlgebraElement::monomial(m));
      if (!image.is_zero()) {
        if (out.failures++ == 0)
          out.first_failure = d.describe() + " maps x^" + to_string(m) + " to " + image.to_string();
      }
    }
  return out;
}

PropertyResult slice_sum_check(const AffineMonoid& p, const InvariantReport& r, const Integer& bound,
                               std::size_t max_iter) {
  PropertyResult res{"slice sums are nilpotent with slice", true, ""};
  DerivationEngine eng(p, AlgebraMode::strict, max_iter);
  const auto samples = monoid_points(p, bound);
  std::size_t pairs = 0;
  for (const auto& c : r.facets) {
    if (!c.slice) continue;
    std::vector<Derivation> others{Derivation::zero()};
    for (auto f : r.almost_saturated) {
      if (f == c.facet) continue;
      for (const auto& root : demazure_roots(p.dual(), f, r.root_height)) {
        if (descends(p, root).status != Verdict::yes) continue;
        auto d = Derivation::homogeneous(root_derivation(p, root));
        if (eng.apply(d, AlgebraElement::monomial(c.slice->slice)).is_zero()) others.push_back(d);
      }
    }
    for (const auto& o : others) {
      ++pairs;
      auto rep = eng.sum_with_slice_check(c.slice->derivation, c.slice->slice, o, samples);
      if (!rep.passed() && res.passed) {
        res.passed = false;
        res.detail = "facet " + std::to_string(c.facet) + " with " + o.describe() + " fails";
      }
    }
  }
  if (res.passed) res.detail = std::to_string(pairs) + " pairs on " + std::to_string(samples.size()) + " monomials";
  return res;
}

std::vector<PropertyResult> property_suite(const AffineMonoid& p, const Bounds& bounds, std::uint32_t seed) {
  std::vector<PropertyResult> out;
  const Integer probe = std::min(Integer(12), bounds.degree_for(p));

  {
    PropertyResult r{"membership agrees with sum enumeration", true, ""};
    const auto sums = sums_up_to(p.generators(), p.grading(), probe);
    std::size_t n = 0;
    for (const auto& m : p.cone_points_up_to(probe)) {
      ++n;
      bool direct = solve_nonnegative(p.generators(), m, p.grading()).has_value();
      if (direct != (sums.count(m) > 0) || p.contains(m) != direct) {
        r.passed = false;
        r.detail = "disagreement at " + to_string(m);
        break;
      }
    }
    if (r.passed) r.detail = std::to_string(n) + " points of degree <= " + to_string(probe);
    out.push_back(r);
  }
  {
    PropertyResult r{"hole lists agree with sum enumeration", true, ""};
    if (p.holes_up_to(probe).holes != holes_by_closure(p, probe)) {
      r.passed = false;
      r.detail = "hole lists differ below degree " + to_string(probe);
    }
    out.push_back(r);
  }
  {
    PropertyResult r{"descent agrees with direct application", true, ""};
    std::size_t n = 0;
    for (std::size_t f = 0; f < p.facet_count() && r.passed; ++f)
      for (const auto& root : demazure_roots(p.dual(), f, bounds.root_height)) {
        ++n;
        const bool exact = descends(p, root).status == Verdict::yes;
        if (exact != descends_up_to(p, f, root.e, probe)) {
          r.passed = false;
          r.detail = "root " + to_string(root.e) + " of facet " + std::to_string(f);
          break;
        }
      }
    if (r.passed) r.detail = std::to_string(n) + " roots";
    out.push_back(r);
  }

  const InvariantReport rep = analyze(p, bounds);
  {
    PropertyResult r{"ml face is a face of the ml* face", true, ""};
    if (rep.ml_face && rep.ml_star_face) {
      const MFace a = face_from_summary(p, *rep.ml_face), b = face_from_summary(p, *rep.ml_star_face);
      r.passed = a.is_subface_of(b);
    }
    out.push_back(r);
  }
  if (rep.splitting) {
    PropertyResult r{"affine rays are independent", true, ""};
    std::vector<std::vector<Integer>> rows;
    for (const auto& a : rep.splitting->affine_rays) rows.push_back(a.vector.coords());
    r.passed = rows.size() <= p.rank() && rank_of(rows, p.rank()) == rows.size();
    r.detail = std::to_string(rows.size()) + " affine rays";
    out.push_back(r);

    PropertyResult s{"splitting reproduces membership", true, ""};
    for (const auto& m : p.cone_points_up_to(probe))
      if (in_split_monoid(p, *rep.splitting, m) != p.contains(m)) {
        s.passed = false;
        s.detail = "disagreement at " + to_string(m);
        break;
      }
    out.push_back(s);
  }
  {
    PropertyResult r{"derivations vanish on the ml face", true, ""};
    const auto c = ml_face_shadow(p, rep, Integer(10), seed);
    r.passed = c.failures == 0;
    r.detail = c.failures ? c.first_failure
                          : std::to_string(c.roots) + " roots, " + std::to_string(c.replicas) + " replicas, " +
                                std::to_string(c.sums) + " sums, " + std::to_string(c.conjugates) +
                                " conjugates on " + std::to_string(c.monomials) + " monomials";
    out.push_back(r);
  }
  out.push_back(slice_sum_check(p, rep, Integer(6), bounds.max_iter));
  {
    PropertyResult r{"report round-trips through JSON", true, ""};
    const std::string a = report_to_json(rep);
    r.passed = report_from_json(a) == rep && report_to_json(analyze(p, bounds)) == a;
    out.push_back(r);
  }
  return out;
}

}  // namespace mltoric::oracles
