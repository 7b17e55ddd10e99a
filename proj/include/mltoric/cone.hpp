#pragma once

// Rational polyhedral cones given by generators, with their facet normals,
// extremal rays, faces (as ray-index sets) and duals.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mltoric/lattice.hpp"

namespace mltoric {

template <Space S>
class Face;

template <Space S>
class RationalCone {
 public:
  using Vector = IntVector<S>;
  using Normal = IntVector<dual_of(S)>;

  RationalCone();

  // Double description of cone(generators). Zero generators are ignored.
  static RationalCone from_generators(std::size_t ambient_rank, std::span<const Vector> generators);

  std::size_t ambient_rank() const noexcept;
  std::size_t dimension() const noexcept;

  // Primitive extremal ray generators, sorted. For a cone with lineality
  // these are representatives orthogonal to the lineality space.
  const std::vector<Vector>& rays() const noexcept;
  const std::vector<Vector>& lineality() const noexcept;
  // Primitive facet normals, sorted; one per facet. For a cone that is not
  // full-dimensional they are chosen inside the span of the cone.
  const std::vector<Normal>& facet_normals() const noexcept;
  // Basis of the orthogonal complement of the span.
  const std::vector<Normal>& equations() const noexcept;

  bool is_pointed() const noexcept { return lineality().empty(); }
  bool is_full_dimensional() const noexcept { return equations().empty(); }
  bool contains(const Vector& x) const;

  std::vector<Face<S>> facets() const;
  Face<S> facet(std::size_t normal_index) const;
  Face<S> improper_face() const;
  // Smallest face containing the given rays.
  Face<S> face_spanned_by(std::vector<std::size_t> ray_indices) const;

  friend bool operator==(const RationalCone& a, const RationalCone& b) {
    return a.d_ == b.d_ || (a.ambient_rank() == b.ambient_rank() && a.rays() == b.rays() &&
                            a.lineality() == b.lineality() &&
                            a.facet_normals() == b.facet_normals() &&
                            a.equations() == b.equations());
  }

 private:
  struct Data;
  explicit RationalCone(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

template <Space S>
class Face {
 public:
  using Vector = IntVector<S>;
  using Normal = IntVector<dual_of(S)>;

  Face(RationalCone<S> cone, std::vector<std::size_t> ray_indices);

  const RationalCone<S>& cone() const noexcept { return cone_; }
  const std::vector<std::size_t>& ray_indices() const noexcept { return rays_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::vector<Vector> ray_vectors() const;
  // Facet normals vanishing on every ray of the face.
  std::vector<Normal> supporting_normals() const;
  std::vector<std::size_t> supporting_normal_indices() const;
  bool contains(const Vector& x) const;
  bool contains_ray(std::size_t ray_index) const;
  // True when this face is a face of `other` (same cone, ray subset).
  bool is_subface_of(const Face& other) const;

  friend bool operator==(const Face& a, const Face& b) {
    return a.rays_ == b.rays_ && a.cone_ == b.cone_;
  }

 private:
  RationalCone<S> cone_;
  std::vector<std::size_t> rays_;
  std::size_t dim_ = 0;
};

template <Space S>
RationalCone<S> cone_from_generators(std::size_t ambient_rank, std::span<const IntVector<S>> rays) {
  return RationalCone<S>::from_generators(ambient_rank, rays);
}

template <Space S>
RationalCone<dual_of(S)> dual_cone(const RationalCone<S>& cone);

// Face whose rays are common to all given faces. Throws DomainError on an
// empty list or faces of different cones.
template <Space S>
Face<S> intersect_faces(std::span<const Face<S>> faces);

// tau -> tau^ = tau-perp intersected with the dual; `dual` must be
// dual_cone(face.cone()) of a pointed full-dimensional cone.
template <Space S>
Face<dual_of(S)> dual_face(const Face<S>& face, const RationalCone<dual_of(S)>& dual);

// Lattice points x of a pointed full-dimensional cone with
// 0 <= <x, grading> <= max_degree, in lexicographic order. The grading must
// be strictly positive on all rays.
std::vector<LatticePoint> lattice_points_up_to(const RationalCone<Space::character>& cone,
                                               const DualVector& grading,
                                               const Integer& max_degree);

extern template class RationalCone<Space::character>;
extern template class RationalCone<Space::cocharacter>;
extern template class Face<Space::character>;
extern template class Face<Space::cocharacter>;

}  // namespace mltoric
