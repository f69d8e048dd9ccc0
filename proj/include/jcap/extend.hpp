// Extension of a cap to the unbounded convex polyhedron below its face planes,
// computed by intersecting half-spaces through a hull in the dual space.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jcap/cap.hpp"

namespace jcap {

/// Unbounded edge of the extension.
struct Ray {
  std::size_t origin = 0;  // vertex id in UnboundedPolyhedron::vertices
  Point3 origin_point;
  Vec3 direction;  // unit, direction.z < 0

  bool operator==(const Ray&) const = default;
};

/// Unbounded face: the part of `plane` outside the bounded surface, bounded by
/// `chain` (boundary vertices in the bounded part's counterclockwise order),
/// the ray leaving chain.front() and the ray leaving chain.back().
struct UnboundedFace {
  Plane plane;
  Vec3 normal;  // outward unit normal
  std::vector<std::size_t> chain;
  std::size_t left_ray = 0;   // ray at chain.front()
  std::size_t right_ray = 0;  // ray at chain.back()

  bool operator==(const UnboundedFace&) const = default;
};

struct UnboundedPolyhedron {
  std::vector<Point3> vertices;
  /// Parent-polyhedron vertex id for vertices taken from the cap.
  std::vector<std::optional<std::size_t>> cap_vertex;
  /// Bounded faces, counterclockwise seen from above.
  std::vector<Face> bounded_faces;
  /// Boundary cycle of the bounded part, counterclockwise seen from +z.
  std::vector<std::size_t> boundary;
  /// Vertices created by the extension (not cap vertices), ascending.
  std::vector<std::size_t> new_vertices;
  /// Rays in boundary order; unbounded_faces[j] lies between rays j and j+1.
  std::vector<Ray> rays;
  std::vector<UnboundedFace> unbounded_faces;

  bool operator==(const UnboundedPolyhedron&) const = default;
};

/// The extension could not be built as a polyhedron with a pointed limit angle,
/// e.g. a cap lying in a single plane (the extension is a half-space).
struct DegenerateExtension {
  std::string reason;
  std::vector<Plane> planes;  // distinct boundary-face planes
};

using Extension = std::variant<UnboundedPolyhedron, DegenerateExtension>;

/// Explicit-form plane of a polyhedron face; VerticalPlane for vertical faces.
Plane face_plane(const Face& f, const Tolerances& tol = {});

/// One plane per cap face that shares an edge with the boundary cycle.
std::vector<Plane> boundary_face_planes(const Cap& c, const Tolerances& tol = {});

/// z = a x + b y + c  ->  (a, b, -c)
Point3 dualize_plane(const Plane& p);
/// (u, v, w)  ->  z = u x + v y - w
Plane dualize_point(const Point3& q);

/// Vertices of the intersection of the half-spaces z <= a_i x + b_i y + c_i,
/// found by hulling the dual points and dualizing back its upper faces.
/// Duplicate planes are ignored. Returns an empty set when the planes have no
/// vertex (fewer than three, a common line, or parallel gradients).
std::vector<Point3> lower_envelope_vertices(const std::vector<Plane>& planes, const Tolerances& tol = {});

Extension build_extension(const Cap& c, const Tolerances& tol = {});

/// Boundary of a bounded convex surface: the cycle, and for every boundary
/// edge boundary[i] -> boundary[i+1] the id of the plane owning it.
struct BoundedBoundary {
  std::vector<Point3> vertices;
  std::vector<std::size_t> boundary;
  std::vector<std::size_t> edge_plane;
  std::vector<Plane> planes;        // indexed by plane id
  std::vector<Vec3> plane_normals;  // outward unit normals, indexed by plane id
};

struct RaysAndFaces {
  std::vector<Ray> rays;
  std::vector<UnboundedFace> faces;
};

/// One ray per vertex where the owning plane changes along the boundary, along
/// the intersection line of the two planes and pointing down; one unbounded
/// face per run of boundary edges in the same plane. Throws
/// DegenerateExtension with fewer than three runs or a horizontal ray.
RaysAndFaces build_rays(const BoundedBoundary& b, const Tolerances& tol = {});

/// Structural invariants of an extension against its cap; empty when all hold.
std::vector<std::string> validate_extension(const Cap& c, const UnboundedPolyhedron& u, const Tolerances& tol);

}  // namespace jcap
