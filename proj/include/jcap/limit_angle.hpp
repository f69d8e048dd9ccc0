// Limit angle of an unbounded polyhedron and the curvature bookkeeping that
// ties its apex to the vertices of the polyhedron.

#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "jcap/extend.hpp"

namespace jcap {

/// Convex cone at `apex` spanned by `directions` (unit, cyclic order).
struct LimitAngle {
  Point3 apex;
  std::vector<Vec3> directions;

  bool operator==(const LimitAngle&) const = default;
};

/// Polyhedral surface whose faces may reach infinity. An unbounded face is
/// the cyclic sequence (infinity, loop..., infinity): it arrives from infinity
/// along `from_ideal` (down ray `in_ray`, reversed) and leaves along `to_ideal`
/// (ray `out_ray`).
class FanSurface {
 public:
  struct SurfaceFace {
    std::vector<std::size_t> loop;  // counterclockwise seen from outside
    Vec3 normal;                    // outward unit normal
    bool unbounded = false;
    Vec3 from_ideal;
    Vec3 to_ideal;
    std::size_t in_ray = 0;
    std::size_t out_ray = 0;
  };

  static FanSurface from_polyhedron(const Polyhedron& p);
  /// Cap faces only; boundary vertices have open fans.
  static FanSurface from_cap(const Cap& c);
  /// Bounded faces plus unbounded faces closed through the ideal vertex.
  static FanSurface from_unbounded(const UnboundedPolyhedron& u);

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<SurfaceFace>& faces() const { return faces_; }

  /// Interior angle of `face` at its vertex `v`.
  double corner_angle(std::size_t face, std::size_t v) const;
  /// Faces around `v` in rotational order; throws BoundaryVertex when the fan
  /// does not close.
  std::vector<std::size_t> fan(std::size_t v) const;

 private:
  FanSurface(std::vector<Point3> vertices, std::vector<SurfaceFace> faces);

  std::vector<Point3> vertices_;
  std::vector<SurfaceFace> faces_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> directed_;  // (a, b) -> face with edge a->b
};

/// Throws DegenerateLimitAngle when `u` has fewer than three rays.
LimitAngle build_limit_angle(const UnboundedPolyhedron& u, const Point3& apex = {});

/// The cone itself as an unbounded polyhedron: one vertex, one ray per
/// direction, one unbounded face between consecutive directions.
UnboundedPolyhedron cone_as_unbounded(const LimitAngle& v);

/// 2*pi minus the sum of face angles at `v`.
double vertex_curvature(const FanSurface& s, std::size_t v);

/// 2*pi minus the sum of angles between consecutive cone directions.
double limit_apex_curvature(const LimitAngle& v, const Tolerances& tol = {});

/// Area of the spherical polygon traced by the outward normals of the faces
/// around `v`; 0 when fewer than three distinct normals meet there.
double spherical_image_curvature(const FanSurface& s, std::size_t v, const Tolerances& tol = {});

struct CurvatureReport {
  std::map<std::size_t, double> per_vertex;
  double total_cap = 0.0;        // sum over vertices that came from the cap
  double total_extension = 0.0;  // sum over every vertex
  double limit_apex = 0.0;
  double identity_gap = 0.0;
  double bound_margin = 0.0;
  /// Largest |spherical image - angle defect| over strictly convex vertices.
  double spherical_image_gap = 0.0;
  std::size_t strictly_convex_vertices = 0;
  double identity_tolerance = 1e-9;
  bool identity_holds = false;
  bool bound_holds = false;
};

CurvatureReport verify_curvature_identity(const UnboundedPolyhedron& u, const LimitAngle& v,
                                          const Tolerances& tol = {}, double identity_tolerance = 1e-9);

/// True when `v.apex` lies in the extension and every cone direction is a
/// recession direction of it, so the whole cone lies inside.
bool limit_angle_inside(const UnboundedPolyhedron& u, const LimitAngle& v, const Tolerances& tol = {});

}  // namespace jcap
