#include "mltoric/demazure.hpp"

#include <algorithm>

namespace mltoric {

bool is_demazure_root(const NCone& sigma, std::size_t ray, const LatticePoint& e) {
  const auto& rays = sigma.rays();
  if (ray >= rays.size()) throw DomainError("ray index out of range");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    Integer v = pairing(e, rays[i]);
    if (i == ray ? v != -1 : v < 0) return false;
  }
  return true;
}

std::vector<DemazureRoot> demazure_roots(const NCone& sigma, std::size_t ray, const Integer& height) {
  if (!sigma.is_pointed() || !sigma.is_full_dimensional())
    throw DomainError("Demazure roots need a pointed full-dimensional cone");
  const auto& rays = sigma.rays();
  if (ray >= rays.size()) throw DomainError("ray index out of range");
  if (height < 0) throw DomainError("root height must be nonnegative");
  const std::size_t n = sigma.ambient_rank();

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (i != ray) others.push_back(i);

  auto feasible = [&](const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < rays.size(); ++i) {
      Rational v = 0;
      for (std::size_t k = 0; k < n; ++k) v += x[k] * rays[i][k];
      if (i == ray ? v != -1 : (v < 0 || v > height)) return false;
    }
    return true;
  };

  // Vertices of the bounded region: n_ray at -1 and n-1 further rays at 0
  // or at the height, linearly independent.
  std::vector<std::vector<Rational>> vertices;
  std::vector<bool> chosen(others.size(), false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<long>(std::min(n - 1, others.size())), true);
  if (others.size() >= n - 1) {
    do {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < others.size(); ++i)
        if (chosen[i]) pick.push_back(others[i]);
      std::vector<std::vector<Integer>> rows{rays[ray].coords()};
      for (auto i : pick) rows.push_back(rays[i].coords());
      if (rank_of(rows, n) != n) continue;
      std::vector<std::vector<Integer>> columns(n, std::vector<Integer>(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) columns[c][r] = rows[r][c];
      for (std::size_t mask = 0; mask < (std::size_t{1} << pick.size()); ++mask) {
        std::vector<Integer> rhs{Integer(-1)};
        for (std::size_t k = 0; k < pick.size(); ++k) rhs.push_back((mask >> k) & 1 ? height : Integer(0));
        auto x = solve_rational(columns, rhs);
        if (x && feasible(*x)) vertices.push_back(*x);
      }
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }

  std::vector<DemazureRoot> out;
  if (vertices.empty()) return out;
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational mn = vertices[0][k], mx = vertices[0][k];
    for (const auto& v : vertices) {
      mn = std::min(mn, v[k]);
      mx = std::max(mx, v[k]);
    }
    lo[k] = ceil_div(mn.get_num(), mn.get_den());
    hi[k] = floor_div(mx.get_num(), mx.get_den());
    if (lo[k] > hi[k]) return out;
  }
  LatticePoint e(lo);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < rays.size() && ok; ++i) {
      Integer v = pairing(e, rays[i]);
      ok = i == ray ? v == -1 : (v >= 0 && v <= height);
    }
    if (ok) out.push_back({ray, e});
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (e[k] < hi[k]) {
        e[k] += 1;
        break;
      }
      e[k] = lo[k];
      if (k == 0) return out;
    }
  }
}

HomogeneousDerivation root_derivation(const AffineMonoid& p, const DemazureRoot& root) {
  return {p.facet_normal(root.ray), root.e, Rational(1)};
}

DescentVerdict descends(const AffineMonoid& p, const DemazureRoot& root) {
  if (!is_demazure_root(p.dual(), root.ray, root.e))
    throw DomainError(to_string(root.e) + " is not a Demazure root for ray " + std::to_string(root.ray));
  DescentVerdict v;
  v.certificate = Certificate::exact();
  const DualVector& n = p.facet_normal(root.ray);
  for (const auto& g : p.generators()) {
    if (pairing(g, n) <= 0) continue;
    if (!p.contains(g + root.e)) {
      v.status = Verdict::no;
      v.witness = g;
      return v;
    }
  }
  v.status = Verdict::yes;
  return v;
}

MFace other_facets_face(const AffineMonoid& p, std::size_t facet) {
  std::vector<MFace> others;
  for (std::size_t i = 0; i < p.facet_count(); ++i)
    if (i != facet) others.push_back(p.facet(i));
  if (others.empty()) return p.cone().improper_face();
  return intersect_faces(std::span<const MFace>(others));
}

namespace {

Verdict affine_verdict(const FacetSaturation& sat, std::size_t others_dim) {
  if (others_dim != 1) return Verdict::no;
  switch (sat.status) {
    case FacetStatus::saturated:
    case FacetStatus::almost_saturated:
      return Verdict::yes;
    case FacetStatus::nowhere_saturated:
      return Verdict::no;
    case FacetStatus::inconclusive:
      return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

AffineRayTest affine_ray_test(const AffineMonoid& p, std::size_t f, const FacetSaturation& sat,
                              const Bounds& bounds) {
  const MFace face = p.facet(f);
  const MFace tau = other_facets_face(p, f);
  if (tau.ray_indices().size() != 1)
    throw InternalInconsistency("the other facets of an affine facet do not meet in a ray");
  const DualVector& n = p.facet_normal(f);

  AffineRayTest t;
  t.ray = p.cone().rays()[tau.ray_indices()[0]];
  t.in_monoid = p.contains(t.ray);
  t.pairing = pairing(t.ray, n);
  t.certificate = Certificate::exact();

  std::vector<LatticePoint> holes_on_face;
  if (const auto* ph = p.planar_holes()) {
    for (const auto& h : ph->isolated)
      if (pairing(h, n) == 0) holes_on_face.push_back(h);
    for (const auto& fam : ph->families)
      if (pairing(fam.base, n) == 0) holes_on_face.push_back(fam.base);
    std::sort(holes_on_face.begin(), holes_on_face.end());
    const std::size_t g = 1 - f;
    t.holes_persist = true;
    for (const auto& h : holes_on_face)
      if (auto k = p.planar_series_break(g, h)) {
        t.holes_persist = false;
        t.hole = h;
        t.break_at = *k;
        break;
      }
  } else if (sat.hole_free) {
    t.holes_persist = true;
  } else {
    for (const auto& h : p.holes_up_to(bounds.degree_for(p)).holes)
      if (face.contains(h)) holes_on_face.push_back(h);
    t.holes_persist = true;
    for (const auto& h : holes_on_face) {
      for (std::size_t k = 1; k <= bounds.family_window; ++k) {
        Integer kk(static_cast<unsigned long>(k));
        if (p.contains(h + kk * t.ray)) {
          t.holes_persist = false;
          t.hole = h;
          t.break_at = kk;
          break;
        }
      }
      if (!t.holes_persist) break;
    }
    if (t.holes_persist && !holes_on_face.empty())
      t.certificate = Certificate::window(Integer(static_cast<unsigned long>(bounds.family_window)));
  }

  if (!t.in_monoid) {
    t.verdict = Verdict::no;
    t.reason = "primitive vector " + to_string(t.ray) + " is not in P";
  } else if (t.pairing != 1) {
    t.verdict = Verdict::no;
    t.reason = "pairing of " + to_string(t.ray) + " with the facet normal " + to_string(n) +
               " is " + to_string(t.pairing) + ", not 1";
  } else if (!t.holes_persist) {
    t.verdict = Verdict::no;
    t.reason = "hole " + to_string(*t.hole) + " on the facet: " + to_string(*t.hole) + " + " +
               to_string(*t.break_at) + "*" + to_string(t.ray) + " lies in P";
  } else {
    t.verdict = Verdict::yes;
    t.reason = holes_on_face.empty()
                   ? "primitive vector in P with pairing 1; the facet has no holes"
                   : "primitive vector in P with pairing 1; every hole on the facet stays a hole "
                     "along the ray";
  }
  if (t.verdict == Verdict::no) t.certificate = Certificate::exact();
  return t;
}

}  // namespace

Verdict is_affine_facet(const AffineMonoid& p, std::size_t facet, const Bounds& bounds) {
  const auto sat = p.facet_saturation_status(facet, bounds.degree_for(p), bounds.family_window);
  return affine_verdict(sat, other_facets_face(p, facet).dimension());
}

AffineRayTest is_affine_ray(const AffineMonoid& p, std::size_t facet, const Bounds& bounds) {
  const auto sat = p.facet_saturation_status(facet, bounds.degree_for(p), bounds.family_window);
  if (affine_verdict(sat, other_facets_face(p, facet).dimension()) != Verdict::yes)
    throw DomainError("facet " + std::to_string(facet) + " is not affine");
  return affine_ray_test(p, facet, sat, bounds);
}

std::optional<SliceDerivation> slice_derivation_for_facet(const AffineMonoid& p, std::size_t facet,
                                                          const Bounds& bounds) {
  return classify_facet(p, facet, bounds).slice;
}

FacetClassification classify_facet(const AffineMonoid& p, std::size_t f, const Bounds& bounds) {
  if (f >= p.facet_count()) throw DomainError("facet index out of range");
  FacetClassification c;
  c.facet = f;
  c.normal = p.facet_normal(f);
  c.rays = p.facet(f).ray_indices();
  c.saturation = p.facet_saturation_status(f, bounds.degree_for(p), bounds.family_window);
  const MFace tau = other_facets_face(p, f);
  c.others_dimension = tau.dimension();
  c.affine = affine_verdict(c.saturation, c.others_dimension);
  c.certificate = c.saturation.certificate;
  if (c.affine != Verdict::yes) return c;

  c.affine_strict = c.saturation.hole_free;
  if (!c.affine_strict)
    c.note = "facet contains holes: it is affine because it carries a saturation point, "
             "while the reading that requires every lattice point of the facet to lie in P "
             "would reject it";
  c.distinguished_ray = tau.ray_indices()[0];
  c.affine_ray = affine_ray_test(p, f, c.saturation, bounds);
  c.certificate = weakest(c.certificate, c.affine_ray->certificate);
  if (c.affine_ray->verdict != Verdict::yes) return c;

  const LatticePoint& r = c.affine_ray->ray;
  DemazureRoot root{f, -r};
  if (!is_demazure_root(p.dual(), f, root.e))
    throw InternalInconsistency("slice root " + to_string(root.e) + " is not a Demazure root");
  if (descends(p, root).status != Verdict::yes)
    throw InternalInconsistency("slice derivation for facet " + std::to_string(f) + " does not descend");
  c.slice = SliceDerivation{root_derivation(p, root), r};
  return c;
}

}  // namespace mltoric
