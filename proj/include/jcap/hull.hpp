// Closed convex polyhedra and the 3D convex hull that builds them.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jcap/geom.hpp"

namespace jcap {

/// Planar convex face: vertex loop counterclockwise seen from outside, with the
/// outward unit normal and offset of its supporting plane (normal . x = offset).
struct Face {
  std::vector<std::size_t> vertices;
  Vec3 normal;
  double offset = 0.0;

  double signed_distance(const Point3& p) const { return dot(normal, p) - offset; }
  bool operator==(const Face&) const = default;
};

using EdgeKey = std::pair<std::size_t, std::size_t>;  // (min, max)

inline EdgeKey edge_key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

/// Faces on either side of an undirected edge {u < v}: `forward` contains the
/// directed edge u->v, `backward` contains v->u.
struct EdgeFaces {
  std::size_t forward = 0;
  std::size_t backward = 0;
};

/// Closed polyhedral 2-manifold with planar faces. Construction checks the
/// combinatorial invariants (every edge used once in each direction); geometric
/// checks live in `validate_polyhedron`.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(std::vector<Point3> vertices, std::vector<std::vector<std::size_t>> face_loops);

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::map<EdgeKey, EdgeFaces>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Face on the other side of edge (u, v) from `face`.
  std::size_t neighbor_across(std::size_t face, std::size_t u, std::size_t v) const;

  double volume() const;

  bool operator==(const Polyhedron& o) const;

 private:
  std::vector<Point3> vertices_;
  std::vector<Face> faces_;
  std::map<EdgeKey, EdgeFaces> edges_;
};

/// Problems found by `validate_polyhedron`; empty means valid.
std::vector<std::string> validate_polyhedron(const Polyhedron& p, const Tolerances& tol);

struct HullResult {
  Polyhedron polyhedron;
  /// source[i] is the input index of hull vertex i (increasing).
  std::vector<std::size_t> source;
};

/// Convex hull by incremental insertion (furthest conflict point first), with
/// coplanar triangles merged into maximal convex faces and collinear or
/// in-face points dropped. Vertex order follows input order; each face loop
/// starts at its lowest vertex index and faces are sorted lexicographically.
/// Throws DegenerateHull when the points do not span three dimensions.
HullResult convex_hull_indexed(std::span<const Point3> points, const Tolerances& tol);
HullResult convex_hull_indexed(std::span<const Point3> points);
Polyhedron convex_hull(std::span<const Point3> points, const Tolerances& tol);
Polyhedron convex_hull(std::span<const Point3> points);

/// Faces whose outward normal points up (positive z beyond eps_angle): the part
/// of the surface visible from z = +infinity.
std::vector<std::size_t> upward_faces(const Polyhedron& p, const Tolerances& tol = {});
/// Faces whose outward normal points down: visible from z = -infinity.
std::vector<std::size_t> downward_faces(const Polyhedron& p, const Tolerances& tol = {});

}  // namespace jcap
