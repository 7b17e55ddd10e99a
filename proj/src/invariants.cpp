#include "mltoric/invariants.hpp"

#include <algorithm>
#include <future>

namespace mltoric {

FaceSummary FaceSummary::of(const MFace& face) {
  return {face.ray_indices(), face.ray_vectors(), face.dimension()};
}

std::vector<FacetClassification> classify_facets(const AffineMonoid& p, const Bounds& bounds) {
  std::vector<std::future<FacetClassification>> jobs;
  const bool parallel = worker_threads() > 1 && p.facet_count() > 1;
  for (std::size_t f = 0; f < p.facet_count(); ++f)
    jobs.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                              [&p, &bounds, f] { return classify_facet(p, f, bounds); }));
  std::vector<FacetClassification> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::optional<MFace> ml_face(const AffineMonoid& p, const std::vector<FacetClassification>& facets) {
  std::vector<MFace> almost;
  for (const auto& c : facets) {
    if (c.saturation.status == FacetStatus::inconclusive) return std::nullopt;
    if (c.saturation.status != FacetStatus::nowhere_saturated) almost.push_back(p.facet(c.facet));
  }
  if (almost.empty()) return p.cone().improper_face();
  return intersect_faces(std::span<const MFace>(almost));
}

namespace {

std::optional<std::vector<AffineRay>> affine_rays(const std::vector<FacetClassification>& facets) {
  std::vector<AffineRay> out;
  for (const auto& c : facets) {
    if (c.affine == Verdict::inconclusive) return std::nullopt;
    if (c.affine_ray && c.affine_ray->verdict == Verdict::inconclusive) return std::nullopt;
    if (c.slice) out.push_back({c.facet, *c.distinguished_ray, c.affine_ray->ray});
  }
  return out;
}

}  // namespace

std::optional<MFace> ml_star_face(const AffineMonoid& p,
                                  const std::vector<FacetClassification>& facets) {
  auto rays = affine_rays(facets);
  if (!rays || rays->empty()) return std::nullopt;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < p.cone().rays().size(); ++i)
    if (std::none_of(rays->begin(), rays->end(), [&](const AffineRay& a) { return a.ray == i; }))
      rest.push_back(i);
  MFace face = p.cone().face_spanned_by(rest);
  if (face.ray_indices() != rest || face.dimension() + rays->size() != p.rank())
    throw InternalInconsistency("the non-affine rays do not span a face of the expected dimension");
  return face;
}

Splitting split_affine_factor(const AffineMonoid& p, const std::vector<FacetClassification>& facets) {
  Splitting s;
  auto rays = affine_rays(facets);
  if (!rays) throw DomainError("affine rays are not resolved");
  s.affine_rays = *rays;
  s.k = rays->size();

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < p.cone().rays().size(); ++i)
    if (std::none_of(rays->begin(), rays->end(), [&](const AffineRay& a) { return a.ray == i; }))
      rest.push_back(i);
  const MFace core = p.cone().face_spanned_by(rest);
  s.core_face = FaceSummary::of(core);

  for (const auto& g : p.generators()) {
    LatticePoint part = g;
    for (const auto& a : s.affine_rays) {
      Integer c = pairing(g, p.facet_normal(a.facet));
      if (c < 0)
        throw InternalInconsistency("generator " + to_string(g) + " has a negative affine coordinate");
      part -= c * a.vector;
    }
    if (!core.contains(part) || !p.contains(part))
      throw InternalInconsistency("generator " + to_string(g) + " does not split: core part " +
                                  to_string(part) + " is not in P on the core face");
    if (!part.is_zero() && std::find(s.core_generators_ambient.begin(), s.core_generators_ambient.end(),
                                     part) == s.core_generators_ambient.end() &&
        core.contains(g))
      s.core_generators_ambient.push_back(part);
  }
  std::sort(s.core_generators_ambient.begin(), s.core_generators_ambient.end());

  if (s.core_generators_ambient.empty()) {
    s.core_rank = 0;
    return s;
  }
  AffineMonoid core_monoid(p.rank(), s.core_generators_ambient);
  if (core_monoid.rank() != core.dimension())
    throw InternalInconsistency("core monoid rank differs from the core face dimension");
  s.core_rank = core_monoid.rank();
  s.core_generators = core_monoid.generators();
  return s;
}

bool in_split_monoid(const AffineMonoid& p, const Splitting& s, const LatticePoint& x) {
  LatticePoint part = x;
  for (const auto& a : s.affine_rays) {
    Integer c = pairing(x, p.facet_normal(a.facet));
    if (c < 0) return false;
    part -= c * a.vector;
  }
  if (part.is_zero()) return true;
  if (s.core_generators_ambient.empty()) return false;
  MembershipOracle oracle(s.core_generators_ambient, p.grading());
  return oracle.contains(part);
}

InvariantReport analyze(const AffineMonoid& p, const Bounds& bounds, const std::string& name,
                        bool exact_only) {
  InvariantReport r;
  r.name = name;
  r.ambient_rank = p.ambient_rank();
  r.input_generators = p.input_generators();
  r.rank = p.rank();
  r.generators = p.generators();
  r.lattice_index = p.coordinate_change().index();
  r.grading = p.grading();
  r.cone_rays = p.cone().rays();
  r.degree_bound = bounds.degree_for(p);
  r.family_window = bounds.family_window;
  r.root_height = bounds.root_height;
  r.max_iter = bounds.max_iter;
  if (!p.coordinate_change().is_identity())
    r.notes.push_back("generators do not generate the ambient lattice; coordinates are taken in the "
                      "lattice they generate (index " + to_string(r.lattice_index) + ")");

  r.facets = classify_facets(p, bounds);
  r.certificate = Certificate::exact();
  for (auto& c : r.facets) {
    if (exact_only && !c.certificate.is_exact()) {
      c.saturation.status = FacetStatus::inconclusive;
      c.affine = c.affine == Verdict::yes && c.saturation.hole_free ? c.affine : Verdict::inconclusive;
      c.slice.reset();
      c.note = "verdict not exact: " + c.certificate.tag();
    }
    r.certificate = weakest(r.certificate, c.certificate);
    if (c.saturation.status == FacetStatus::saturated ||
        c.saturation.status == FacetStatus::almost_saturated)
      r.almost_saturated.push_back(c.facet);
    if (c.note) r.notes.push_back("facet " + std::to_string(c.facet) + ": " + *c.note);
  }

  const auto ml = ml_face(p, r.facets);
  if (ml) r.ml_face = FaceSummary::of(*ml);
  const auto rays = affine_rays(r.facets);
  std::optional<MFace> star;
  if (rays) {
    star = ml_star_face(p, r.facets);
    r.no_slice = rays->empty();
    if (star) r.ml_star_face = FaceSummary::of(*star);
    r.splitting = split_affine_factor(p, r.facets);
  }

  if (ml && rays) {
    const MFace star_or_all = star ? *star : p.cone().improper_face();
    r.is_rigid_core = star_or_all == *ml;
    r.is_affine_space = star_or_all.dimension() == 0;
    if (!ml->is_subface_of(star_or_all))
      throw InternalInconsistency("the almost saturated facets meet outside the non-affine face");
    if (star) {
      std::vector<MFace> parts{*star};
      for (auto f : r.almost_saturated) parts.push_back(p.facet(f));
      r.ml_equals_ml_star = intersect_faces(std::span<const MFace>(parts)) == *ml;
    }
  }
  if (ml) r.is_rigid = r.almost_saturated.empty();

  r.complete = r.ml_face && rays;
  if (!r.complete) r.notes.push_back("some verdicts are inconclusive within the given bounds");
  return r;
}

}  // namespace mltoric
