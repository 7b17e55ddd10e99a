#include "mltoric/cone.hpp"

#include <algorithm>
#include <optional>

namespace mltoric {

namespace {

using Vec = std::vector<Integer>;

Vec primitive(Vec v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

Vec combine(const Integer& a, const Vec& x, const Integer& b, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Generators of {y : <a, y> >= 0 for every constraint a}: extreme rays
// modulo the lineality space, plus a lineality basis. Adjacency uses the
// combinatorial test on constraints tight at both rays.
struct Description {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;
};

Description double_description(const std::vector<Vec>& constraints, std::size_t n) {
  Description d;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, Integer(0));
    e[i] = 1;
    d.lineality.push_back(std::move(e));
  }
  std::vector<const Vec*> processed;

  for (const Vec& a : constraints) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < d.lineality.size(); ++i)
      if (dot(a, d.lineality[i]) != 0) {
        pick = i;
        break;
      }

    if (pick) {
      Vec l0 = d.lineality[*pick];
      Integer al0 = dot(a, l0);
      if (al0 < 0) {
        for (auto& x : l0) x = -x;
        al0 = -al0;
      }
      std::vector<Vec> lin;
      for (std::size_t i = 0; i < d.lineality.size(); ++i) {
        if (i == *pick) continue;
        Integer c = dot(a, d.lineality[i]);
        lin.push_back(c == 0 ? d.lineality[i] : primitive(combine(al0, d.lineality[i], -c, l0)));
      }
      for (auto& r : d.rays) {
        Integer c = dot(a, r);
        if (c != 0) r = primitive(combine(al0, r, -c, l0));
      }
      d.rays.push_back(primitive(l0));
      d.lineality = std::move(lin);
    } else {
      const std::size_t m = d.rays.size();
      std::vector<Integer> val(m);
      for (std::size_t i = 0; i < m; ++i) val[i] = dot(a, d.rays[i]);

      std::vector<std::vector<bool>> tight(m, std::vector<bool>(processed.size()));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < processed.size(); ++k)
          tight[i][k] = dot(*processed[k], d.rays[i]) == 0;

      auto adjacent = [&](std::size_t p, std::size_t q) {
        for (std::size_t r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          bool dominated = true;
          for (std::size_t k = 0; k < processed.size(); ++k)
            if (tight[p][k] && tight[q][k] && !tight[r][k]) {
              dominated = false;
              break;
            }
          if (dominated) return false;
        }
        return true;
      };

      std::vector<Vec> next;
      for (std::size_t i = 0; i < m; ++i)
        if (val[i] >= 0) next.push_back(d.rays[i]);
      for (std::size_t p = 0; p < m; ++p) {
        if (val[p] <= 0) continue;
        for (std::size_t q = 0; q < m; ++q) {
          if (val[q] >= 0 || !adjacent(p, q)) continue;
          next.push_back(primitive(combine(val[p], d.rays[q], -val[q], d.rays[p])));
        }
      }
      d.rays = std::move(next);
    }
    processed.push_back(&a);
  }
  return d;
}

// Primitive integer representative of v modulo span(basis), orthogonal to it.
Vec reduce_modulo(const Vec& v, const std::vector<Vec>& basis) {
  if (basis.empty()) return primitive(v);
  const std::size_t k = basis.size();
  std::vector<Vec> gram_cols(k, Vec(k));
  Vec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = dot(basis[i], v);
    for (std::size_t j = 0; j < k; ++j) gram_cols[j][i] = dot(basis[i], basis[j]);
  }
  auto c = solve_rational(gram_cols, rhs);
  if (!c) throw InternalInconsistency("singular Gram matrix in projection");
  std::vector<Rational> proj(v.begin(), v.end());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < v.size(); ++i) proj[i] -= (*c)[j] * basis[j][i];
  Integer l = 1;
  for (const auto& x : proj) {
    Integer den = x.get_den();
    l = l / gcd(l, den) * den;
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = proj[i] * l;
    s.canonicalize();
    out[i] = s.get_num();
  }
  return is_zero(out) ? out : primitive(out);
}

void sort_unique(std::vector<Vec>& vs) {
  std::sort(vs.begin(), vs.end(), [](const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace

template <Space S>
struct RationalCone<S>::Data {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<Vector> rays;
  std::vector<Vector> lineality;
  std::vector<Normal> normals;
  std::vector<Normal> equations;
};

template <Space S>
RationalCone<S>::RationalCone() : d_(std::make_shared<Data>()) {}

template <Space S>
RationalCone<S> RationalCone<S>::from_generators(std::size_t ambient_rank,
                                                 std::span<const Vector> generators) {
  std::vector<Vec> gens;
  for (const auto& g : generators) {
    if (g.size() != ambient_rank) throw DimensionError("cone generator of wrong rank");
    if (!g.is_zero()) gens.push_back(primitive(g.coords()));
  }
  sort_unique(gens);

  auto data = std::make_shared<Data>();
  data->n = ambient_rank;

  std::vector<Vec> equations = integer_kernel(gens, ambient_rank);
  data->dim = ambient_rank - equations.size();

  Description dual = double_description(gens, ambient_rank);
  std::vector<Vec> normals;
  for (const auto& r : dual.rays) {
    Vec red = reduce_modulo(r, equations);
    if (!is_zero(red)) normals.push_back(std::move(red));
  }
  sort_unique(normals);

  std::vector<Vec> lin_constraints = normals;
  lin_constraints.insert(lin_constraints.end(), equations.begin(), equations.end());
  std::vector<Vec> lineality = integer_kernel(lin_constraints, ambient_rank);

  // A generator spans an extremal ray iff the normals tight at it, together
  // with the equations, cut the cone down to lineality + that ray.
  const std::size_t target_rank = ambient_rank - 1 - lineality.size();
  std::vector<Vec> rays;
  for (const auto& g : gens) {
    Vec red = reduce_modulo(g, lineality);
    if (is_zero(red)) continue;
    std::vector<Vec> tight = equations;
    for (const auto& nrm : normals)
      if (dot(nrm, g) == 0) tight.push_back(nrm);
    if (rank_of(tight, ambient_rank) == target_rank) rays.push_back(std::move(red));
  }
  sort_unique(rays);

  for (auto& v : rays) data->rays.emplace_back(std::move(v));
  for (auto& v : lineality) data->lineality.emplace_back(std::move(v));
  for (auto& v : normals) data->normals.emplace_back(std::move(v));
  for (auto& v : equations) data->equations.emplace_back(std::move(v));
  return RationalCone(std::shared_ptr<const Data>(std::move(data)));
}

template <Space S>
std::size_t RationalCone<S>::ambient_rank() const noexcept {
  return d_->n;
}
template <Space S>
std::size_t RationalCone<S>::dimension() const noexcept {
  return d_->dim;
}
template <Space S>
auto RationalCone<S>::rays() const noexcept -> const std::vector<Vector>& {
  return d_->rays;
}
template <Space S>
auto RationalCone<S>::lineality() const noexcept -> const std::vector<Vector>& {
  return d_->lineality;
}
template <Space S>
auto RationalCone<S>::facet_normals() const noexcept -> const std::vector<Normal>& {
  return d_->normals;
}
template <Space S>
auto RationalCone<S>::equations() const noexcept -> const std::vector<Normal>& {
  return d_->equations;
}

template <Space S>
bool RationalCone<S>::contains(const Vector& x) const {
  if (x.size() != d_->n) throw DimensionError("cone membership: wrong rank");
  for (const auto& e : d_->equations)
    if (dot(e.coords(), x.coords()) != 0) return false;
  for (const auto& nrm : d_->normals)
    if (dot(nrm.coords(), x.coords()) < 0) return false;
  return true;
}

template <Space S>
Face<S> RationalCone<S>::facet(std::size_t normal_index) const {
  if (normal_index >= d_->normals.size()) throw DomainError("facet index out of range");
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < d_->rays.size(); ++r)
    if (dot(d_->normals[normal_index].coords(), d_->rays[r].coords()) == 0) idx.push_back(r);
  return Face<S>(*this, std::move(idx));
}

template <Space S>
std::vector<Face<S>> RationalCone<S>::facets() const {
  std::vector<Face<S>> out;
  for (std::size_t i = 0; i < d_->normals.size(); ++i) out.push_back(facet(i));
  return out;
}

template <Space S>
Face<S> RationalCone<S>::improper_face() const {
  std::vector<std::size_t> idx(d_->rays.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return Face<S>(*this, std::move(idx));
}

template <Space S>
Face<S> RationalCone<S>::face_spanned_by(std::vector<std::size_t> ray_indices) const {
  std::vector<std::size_t> normals;
  for (std::size_t i = 0; i < d_->normals.size(); ++i) {
    bool vanishes = true;
    for (auto r : ray_indices) {
      if (r >= d_->rays.size()) throw DomainError("ray index out of range");
      if (dot(d_->normals[i].coords(), d_->rays[r].coords()) != 0) vanishes = false;
    }
    if (vanishes) normals.push_back(i);
  }
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < d_->rays.size(); ++r) {
    bool on = true;
    for (auto i : normals)
      if (dot(d_->normals[i].coords(), d_->rays[r].coords()) != 0) on = false;
    if (on) idx.push_back(r);
  }
  return Face<S>(*this, std::move(idx));
}

// ---------------------------------------------------------------------------

template <Space S>
Face<S>::Face(RationalCone<S> cone, std::vector<std::size_t> ray_indices)
    : cone_(std::move(cone)), rays_(std::move(ray_indices)) {
  std::sort(rays_.begin(), rays_.end());
  rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
  std::vector<Vec> span;
  for (auto r : rays_) {
    if (r >= cone_.rays().size()) throw DomainError("ray index out of range");
    span.push_back(cone_.rays()[r].coords());
  }
  for (const auto& l : cone_.lineality()) span.push_back(l.coords());
  dim_ = rank_of(span, cone_.ambient_rank());
}

template <Space S>
auto Face<S>::ray_vectors() const -> std::vector<Vector> {
  std::vector<Vector> out;
  for (auto r : rays_) out.push_back(cone_.rays()[r]);
  return out;
}

template <Space S>
std::vector<std::size_t> Face<S>::supporting_normal_indices() const {
  std::vector<std::size_t> out;
  const auto& normals = cone_.facet_normals();
  for (std::size_t i = 0; i < normals.size(); ++i) {
    bool vanishes = true;
    for (auto r : rays_)
      if (dot(normals[i].coords(), cone_.rays()[r].coords()) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) out.push_back(i);
  }
  return out;
}

template <Space S>
auto Face<S>::supporting_normals() const -> std::vector<Normal> {
  std::vector<Normal> out;
  for (auto i : supporting_normal_indices()) out.push_back(cone_.facet_normals()[i]);
  return out;
}

template <Space S>
bool Face<S>::contains(const Vector& x) const {
  if (!cone_.contains(x)) return false;
  for (const auto& nrm : supporting_normals())
    if (dot(nrm.coords(), x.coords()) != 0) return false;
  return true;
}

template <Space S>
bool Face<S>::contains_ray(std::size_t ray_index) const {
  return std::binary_search(rays_.begin(), rays_.end(), ray_index);
}

template <Space S>
bool Face<S>::is_subface_of(const Face& other) const {
  return cone_ == other.cone_ &&
         std::includes(other.rays_.begin(), other.rays_.end(), rays_.begin(), rays_.end());
}

// ---------------------------------------------------------------------------

template <Space S>
RationalCone<dual_of(S)> dual_cone(const RationalCone<S>& cone) {
  using D = IntVector<dual_of(S)>;
  std::vector<D> gens = cone.facet_normals();
  for (const auto& e : cone.equations()) {
    gens.push_back(e);
    gens.push_back(-e);
  }
  return RationalCone<dual_of(S)>::from_generators(cone.ambient_rank(), gens);
}

template <Space S>
Face<S> intersect_faces(std::span<const Face<S>> faces) {
  if (faces.empty()) throw DomainError("intersect_faces needs at least one face");
  std::vector<std::size_t> common = faces[0].ray_indices();
  for (std::size_t i = 1; i < faces.size(); ++i) {
    if (!(faces[i].cone() == faces[0].cone()))
      throw DomainError("intersect_faces: faces belong to different cones");
    std::vector<std::size_t> next;
    std::set_intersection(common.begin(), common.end(), faces[i].ray_indices().begin(),
                          faces[i].ray_indices().end(), std::back_inserter(next));
    common = std::move(next);
  }
  return Face<S>(faces[0].cone(), std::move(common));
}

template <Space S>
Face<dual_of(S)> dual_face(const Face<S>& face, const RationalCone<dual_of(S)>& dual) {
  const auto& cone = face.cone();
  if (!cone.is_pointed() || !cone.is_full_dimensional())
    throw DomainError("dual_face needs a pointed full-dimensional cone");
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < dual.rays().size(); ++j) {
    bool perp = true;
    for (auto r : face.ray_indices())
      if (dot(cone.rays()[r].coords(), dual.rays()[j].coords()) != 0) perp = false;
    if (perp) idx.push_back(j);
  }
  return dual.face_spanned_by(std::move(idx));
}

std::vector<LatticePoint> lattice_points_up_to(const RationalCone<Space::character>& cone,
                                               const DualVector& grading,
                                               const Integer& max_degree) {
  const std::size_t n = cone.ambient_rank();
  if (!cone.is_pointed() || !cone.is_full_dimensional())
    throw DomainError("lattice point enumeration needs a pointed full-dimensional cone");
  std::vector<LatticePoint> out;
  if (max_degree < 0) return out;
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  // The region is the polytope with vertices 0 and D * r / deg(r).
  std::vector<Rational> lo(n, Rational(0)), hi(n, Rational(0));
  for (const auto& r : cone.rays()) {
    Integer deg = pairing(r, grading);
    if (deg <= 0) throw DomainError("grading is not positive on the ray " + to_string(r));
    for (std::size_t i = 0; i < n; ++i) {
      Rational v(r[i] * max_degree, deg);
      v.canonicalize();
      if (v < lo[i]) lo[i] = v;
      if (v > hi[i]) hi[i] = v;
    }
  }
  std::vector<Integer> lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = ceil_div(lo[i].get_num(), lo[i].get_den());
    upper[i] = floor_div(hi[i].get_num(), hi[i].get_den());
  }
  LatticePoint x(lower);
  while (true) {
    if (pairing(x, grading) <= max_degree && cone.contains(x)) out.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < upper[i]) {
        x[i] += 1;
        break;
      }
      x[i] = lower[i];
      if (i == 0) return out;
    }
  }
}

template class RationalCone<Space::character>;
template class RationalCone<Space::cocharacter>;
template class Face<Space::character>;
template class Face<Space::cocharacter>;
template RationalCone<Space::cocharacter> dual_cone(const RationalCone<Space::character>&);
template RationalCone<Space::character> dual_cone(const RationalCone<Space::cocharacter>&);
template Face<Space::character> intersect_faces(std::span<const Face<Space::character>>);
template Face<Space::cocharacter> intersect_faces(std::span<const Face<Space::cocharacter>>);
template Face<Space::cocharacter> dual_face(const Face<Space::character>&,
                                            const RationalCone<Space::cocharacter>&);
template Face<Space::character> dual_face(const Face<Space::cocharacter>&,
                                          const RationalCone<Space::character>&);

}  // namespace mltoric
