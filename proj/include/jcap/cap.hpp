// Jagged convex caps: the faces of a convex polyhedron whose outward normals
// lie strictly within angle phi of +z, and the boundary cycle they leave.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jcap/hull.hpp"

namespace jcap {

struct CapSpec {
  double phi = kPi / 2.0;  // radians, in (0, pi/2]

  static CapSpec from_degrees(double degrees) { return CapSpec{degrees * kPi / 180.0}; }
  void validate() const;
};

struct Cap {
  Polyhedron parent;
  CapSpec spec;
  std::vector<std::size_t> face_ids;  // ascending
  /// Boundary cycle, counterclockwise seen from +z, starting at its lowest
  /// vertex index. boundary[i] -> boundary[i + 1] is an edge of the cap.
  std::vector<std::size_t> boundary;
  /// Cap faces owning at least one boundary edge, ascending.
  std::vector<std::size_t> boundary_faces;

  /// Parent vertex ids touched by cap faces, ascending.
  std::vector<std::size_t> vertex_ids() const;
  /// Cap face owning the boundary edge boundary[i] -> boundary[i + 1].
  std::size_t boundary_edge_face(std::size_t i) const;
  bool contains_face(std::size_t f) const;
};

/// Faces at an angle of phi or more (within eps_angle) are excluded.
/// Throws EmptyCap, NoBoundary, or LemmaViolation when the boundary edges do
/// not form one simple cycle.
Cap extract_cap(const Polyhedron& p, const CapSpec& spec, const Tolerances& tol = {});

struct DiskReport {
  bool pass = false;
  bool single_cycle = false;
  bool connected = false;
  bool projection_injective = false;
  long vertices = 0;
  long edges = 0;
  long faces = 0;
  long chi = 0;
  std::vector<std::string> diagnostics;
};

/// Checks that the cap complex is a disk: one simple boundary cycle, connected
/// face adjacency, Euler characteristic 1, and an injective vertical projection
/// (projected face areas add up to the area enclosed by the projected boundary).
DiskReport check_disk_topology(const Cap& c);

}  // namespace jcap
