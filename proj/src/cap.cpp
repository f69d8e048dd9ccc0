#include "jcap/cap.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jcap {
namespace {

double projected_area(const std::vector<Point3>& verts, const std::vector<std::size_t>& loop) {
  double twice = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point3& a = verts[loop[i]];
    const Point3& b = verts[loop[(i + 1) % loop.size()]];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

}  // namespace

void CapSpec::validate() const {
  if (!(phi > 0.0) || phi > kPi / 2.0 + 1e-15) {
    throw GeometryError(ErrorCode::InvalidArgument, "cap angle must lie in (0, 90] degrees");
  }
}

std::vector<std::size_t> Cap::vertex_ids() const {
  std::set<std::size_t> ids;
  for (auto f : face_ids) {
    for (auto v : parent.faces()[f].vertices) ids.insert(v);
  }
  return {ids.begin(), ids.end()};
}

bool Cap::contains_face(std::size_t f) const { return std::binary_search(face_ids.begin(), face_ids.end(), f); }

std::size_t Cap::boundary_edge_face(std::size_t i) const {
  const std::size_t u = boundary[i];
  const std::size_t v = boundary[(i + 1) % boundary.size()];
  const auto& ef = parent.edges().at(edge_key(u, v));
  // The cap face runs u -> v.
  return u < v ? ef.forward : ef.backward;
}

Cap extract_cap(const Polyhedron& p, const CapSpec& spec, const Tolerances& tol) {
  spec.validate();
  Cap cap;
  cap.parent = p;
  cap.spec = spec;
  for (std::size_t f = 0; f < p.face_count(); ++f) {
    if (normal_angle_to_z(p.faces()[f].normal) < spec.phi - tol.eps_angle) cap.face_ids.push_back(f);
  }
  if (cap.face_ids.empty()) throw GeometryError(ErrorCode::EmptyCap, "no face is strictly within the cap angle");
  if (cap.face_ids.size() == p.face_count()) {
    throw GeometryError(ErrorCode::NoBoundary, "every face lies in the cap");
  }

  std::map<std::size_t, std::size_t> next;
  std::set<std::size_t> boundary_faces;
  for (const auto& [e, ef] : p.edges()) {
    const bool fwd = cap.contains_face(ef.forward);
    const bool bwd = cap.contains_face(ef.backward);
    if (fwd == bwd) continue;
    const auto [from, to] = fwd ? e : std::pair{e.second, e.first};
    boundary_faces.insert(fwd ? ef.forward : ef.backward);
    if (!next.emplace(from, to).second) {
      throw GeometryError(ErrorCode::LemmaViolation, "boundary vertex " + std::to_string(from) +
                                                         " has more than two boundary edges");
    }
  }
  if (next.empty()) throw GeometryError(ErrorCode::NoBoundary, "cap has no boundary edge");

  const std::size_t start = next.begin()->first;  // lowest index with an outgoing edge
  std::size_t cur = start;
  do {
    cap.boundary.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end() || cap.boundary.size() > next.size()) {
      throw GeometryError(ErrorCode::LemmaViolation, "boundary edges do not close into a cycle");
    }
    cur = it->second;
  } while (cur != start);
  if (cap.boundary.size() != next.size()) {
    throw GeometryError(ErrorCode::LemmaViolation,
                        "boundary splits into several cycles (" + std::to_string(cap.boundary.size()) + " of " +
                            std::to_string(next.size()) + " edges in the first)");
  }
  cap.boundary_faces.assign(boundary_faces.begin(), boundary_faces.end());
  return cap;
}

DiskReport check_disk_topology(const Cap& c) {
  DiskReport r;
  const auto& faces = c.parent.faces();
  const auto& verts = c.parent.vertices();

  // (i) boundary: every boundary vertex has exactly one outgoing and one
  // incoming boundary edge, and they chain into a single cycle.
  std::map<std::size_t, int> out_deg;
  std::map<std::size_t, int> in_deg;
  std::map<std::size_t, std::size_t> next;
  std::set<EdgeKey> cap_edges;
  for (auto f : c.face_ids) {
    const auto& loop = faces[f].vertices;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::size_t a = loop[i];
      const std::size_t b = loop[(i + 1) % loop.size()];
      cap_edges.insert(edge_key(a, b));
      if (!c.contains_face(c.parent.neighbor_across(f, a, b))) {
        ++out_deg[a];
        ++in_deg[b];
        next[a] = b;
      }
    }
  }
  bool degrees_ok = !next.empty();
  for (const auto& [v, d] : out_deg) degrees_ok = degrees_ok && d == 1 && in_deg[v] == 1;
  for (const auto& [v, d] : in_deg) degrees_ok = degrees_ok && d == 1 && out_deg[v] == 1;
  std::size_t cycle_len = 0;
  if (degrees_ok) {
    std::size_t cur = next.begin()->first;
    do {
      cur = next[cur];
      ++cycle_len;
    } while (cur != next.begin()->first && cycle_len <= next.size());
  }
  r.single_cycle = degrees_ok && cycle_len == next.size() && c.boundary.size() == next.size();
  if (!r.single_cycle) r.diagnostics.push_back("boundary is not one simple cycle");

  // (ii) connectivity across shared edges.
  std::set<std::size_t> reached{c.face_ids.front()};
  std::vector<std::size_t> stack{c.face_ids.front()};
  while (!stack.empty()) {
    const std::size_t f = stack.back();
    stack.pop_back();
    const auto& loop = faces[f].vertices;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::size_t g = c.parent.neighbor_across(f, loop[i], loop[(i + 1) % loop.size()]);
      if (c.contains_face(g) && reached.insert(g).second) stack.push_back(g);
    }
  }
  r.connected = reached.size() == c.face_ids.size();
  if (!r.connected) r.diagnostics.push_back("cap faces are not edge-connected");

  // (iii) Euler characteristic of the cap complex.
  r.vertices = static_cast<long>(c.vertex_ids().size());
  r.edges = static_cast<long>(cap_edges.size());
  r.faces = static_cast<long>(c.face_ids.size());
  r.chi = r.vertices - r.edges + r.faces;
  if (r.chi != 1) r.diagnostics.push_back("Euler characteristic is " + std::to_string(r.chi));

  // Projection: faces all project counterclockwise and tile the boundary polygon.
  double face_sum = 0.0;
  bool all_positive = true;
  for (auto f : c.face_ids) {
    const double a = projected_area(verts, faces[f].vertices);
    all_positive = all_positive && a > 0.0;
    face_sum += a;
  }
  const double outline = projected_area(verts, c.boundary);
  r.projection_injective = all_positive && std::abs(face_sum - outline) <= 1e-9 * std::abs(outline);
  if (!r.projection_injective) r.diagnostics.push_back("vertical projection is not one-to-one");

  r.pass = r.single_cycle && r.connected && r.chi == 1 && r.projection_injective;
  return r;
}

}  // namespace jcap
