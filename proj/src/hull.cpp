#include "jcap/hull.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace jcap {
namespace {

Vec3 newell_normal(std::span<const Point3> pts, std::span<const std::size_t> loop) {
  Vec3 n{};
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point3& a = pts[loop[i]];
    const Point3& b = pts[loop[(i + 1) % loop.size()]];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

Face make_face(std::span<const Point3> pts, std::vector<std::size_t> loop) {
  Face f;
  Vec3 centroid{};
  for (auto v : loop) centroid += pts[v];
  centroid = centroid / static_cast<double>(loop.size());
  f.normal = normalized(newell_normal(pts, loop));
  f.offset = dot(f.normal, centroid);
  f.vertices = std::move(loop);
  return f;
}

struct DirectedEdgeHash {
  std::size_t operator()(const std::pair<std::size_t, std::size_t>& e) const {
    return std::hash<std::size_t>()(e.first * 1000003u ^ e.second);
  }
};

// Working triangle of the incremental hull.
struct Tri {
  std::array<std::size_t, 3> v{};
  Vec3 normal;
  double offset = 0.0;
  bool alive = true;
  std::vector<std::size_t> outside;  // conflict points strictly above the plane

  double dist(const Point3& p) const { return dot(normal, p) - offset; }
};

class IncrementalHull {
 public:
  IncrementalHull(std::span<const Point3> pts, const Tolerances& tol) : pts_(pts), tol_(tol) {}

  std::vector<std::array<std::size_t, 3>> run() {
    seed_simplex();
    while (true) {
      // Face with the globally furthest conflict point.
      std::size_t best_face = kNone;
      std::size_t best_point = kNone;
      double best_dist = tol_.eps_geom;
      for (std::size_t f = 0; f < tris_.size(); ++f) {
        if (!tris_[f].alive) continue;
        for (auto p : tris_[f].outside) {
          const double d = tris_[f].dist(pts_[p]);
          if (d > best_dist || (d == best_dist && best_point != kNone && p < best_point)) {
            best_dist = d;
            best_face = f;
            best_point = p;
          }
        }
      }
      if (best_face == kNone) break;
      insert(best_point, best_face);
    }
    std::vector<std::array<std::size_t, 3>> out;
    for (const auto& t : tris_) {
      if (t.alive) out.push_back(t.v);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void seed_simplex() {
    const std::size_t n = pts_.size();
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const auto& p = pts_[i];
      const auto& q = pts_[i0];
      if (std::tie(p.x, p.y, p.z) < std::tie(q.x, q.y, q.z)) i0 = i;
    }
    auto farthest = [&](auto&& measure) {
      std::size_t best = kNone;
      double best_val = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = measure(pts_[i]);
        if (v > best_val) {
          best_val = v;
          best = i;
        }
      }
      return std::pair{best, best_val};
    };
    const auto [i1, d1] = farthest([&](const Point3& p) { return distance(p, pts_[i0]); });
    if (d1 <= tol_.eps_geom) throw GeometryError(ErrorCode::DegenerateHull, "all points coincide");
    const Vec3 axis = normalized(pts_[i1] - pts_[i0]);
    const auto [i2, d2] = farthest([&](const Point3& p) { return norm(cross(p - pts_[i0], axis)); });
    if (d2 <= tol_.eps_geom) throw GeometryError(ErrorCode::DegenerateHull, "all points are collinear");
    const Vec3 pn = normalized(cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]));
    const auto [i3, d3] = farthest([&](const Point3& p) { return std::abs(dot(p - pts_[i0], pn)); });
    if (d3 <= tol_.eps_geom) throw GeometryError(ErrorCode::DegenerateHull, "all points are coplanar");

    std::array<std::size_t, 4> s{i0, i1, i2, i3};
    if (dot(pts_[i3] - pts_[i0], pn) > 0.0) std::swap(s[1], s[2]);
    // Now (s0, s1, s2) is oriented with s3 below it.
    add_tri(s[0], s[1], s[2]);
    add_tri(s[0], s[3], s[1]);
    add_tri(s[1], s[3], s[2]);
    add_tri(s[2], s[3], s[0]);

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(s.begin(), s.end(), i) == s.end()) rest.push_back(i);
    }
    assign(rest, {0, 1, 2, 3});
  }

  std::size_t add_tri(std::size_t a, std::size_t b, std::size_t c) {
    Tri t;
    t.v = {a, b, c};
    const Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
    const double len = norm(n);
    if (!(len > 0.0)) throw GeometryError(ErrorCode::Internal, "hull produced a zero-area triangle");
    t.normal = n / len;
    t.offset = dot(t.normal, (pts_[a] + pts_[b] + pts_[c]) / 3.0);
    const std::size_t id = tris_.size();
    tris_.push_back(std::move(t));
    for (int k = 0; k < 3; ++k) {
      edge_owner_[{tris_[id].v[k], tris_[id].v[(k + 1) % 3]}] = id;
    }
    return id;
  }

  void assign(const std::vector<std::size_t>& candidates, const std::vector<std::size_t>& faces) {
    for (auto p : candidates) {
      std::size_t best = kNone;
      double best_d = tol_.eps_geom;
      for (auto f : faces) {
        const double d = tris_[f].dist(pts_[p]);
        if (d > best_d) {
          best_d = d;
          best = f;
        }
      }
      if (best != kNone) tris_[best].outside.push_back(p);
    }
  }

  void insert(std::size_t p, std::size_t start) {
    // Visible region grown from `start` across edges, so it stays connected.
    std::vector<std::size_t> visible;
    std::set<std::size_t> seen{start};
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t f = queue.front();
      queue.pop_front();
      visible.push_back(f);
      for (int k = 0; k < 3; ++k) {
        const std::size_t g = edge_owner_.at({tris_[f].v[(k + 1) % 3], tris_[f].v[k]});
        if (seen.count(g)) continue;
        if (tris_[g].dist(pts_[p]) > tol_.eps_geom) {
          seen.insert(g);
          queue.push_back(g);
        }
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> horizon;
    for (auto f : visible) {
      for (int k = 0; k < 3; ++k) {
        const std::size_t a = tris_[f].v[k];
        const std::size_t b = tris_[f].v[(k + 1) % 3];
        if (!seen.count(edge_owner_.at({b, a}))) horizon.emplace_back(a, b);
      }
    }

    std::vector<std::size_t> orphans;
    for (auto f : visible) {
      tris_[f].alive = false;
      for (auto q : tris_[f].outside) {
        if (q != p) orphans.push_back(q);
      }
      tris_[f].outside.clear();
      for (int k = 0; k < 3; ++k) edge_owner_.erase({tris_[f].v[k], tris_[f].v[(k + 1) % 3]});
    }

    std::vector<std::size_t> created;
    for (const auto& [a, b] : horizon) created.push_back(add_tri(a, b, p));
    std::sort(orphans.begin(), orphans.end());
    assign(orphans, created);
  }

  std::span<const Point3> pts_;
  Tolerances tol_;
  std::vector<Tri> tris_;
  std::unordered_map<std::pair<std::size_t, std::size_t>, std::size_t, DirectedEdgeHash> edge_owner_;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Merges coplanar neighbouring triangles and returns the boundary loop of each
// merged group, counterclockwise from outside.
std::vector<std::vector<std::size_t>> merge_coplanar(std::span<const Point3> pts,
                                                     const std::vector<std::array<std::size_t, 3>>& tris,
                                                     const Tolerances& tol) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> owner;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) owner[{tris[t][k], tris[t][(k + 1) % 3]}] = t;
  }
  std::vector<Vec3> normals(tris.size());
  std::vector<double> offsets(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& v = tris[t];
    normals[t] = normalized(cross(pts[v[1]] - pts[v[0]], pts[v[2]] - pts[v[0]]));
    offsets[t] = dot(normals[t], pts[v[0]]);
  }
  std::vector<std::size_t> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t u = tris[t][(k + 1) % 3];
      const std::size_t w = tris[t][k];
      const std::size_t s = owner.at({u, w});
      if (s < t) continue;
      // Apex of each triangle against the other's plane.
      std::size_t apex_s = 0;
      for (auto x : tris[s]) {
        if (x != u && x != w) apex_s = x;
      }
      const std::size_t apex_t = tris[t][(k + 2) % 3];
      const bool coplanar = std::abs(dot(normals[t], pts[apex_s]) - offsets[t]) <= tol.eps_geom &&
                            std::abs(dot(normals[s], pts[apex_t]) - offsets[s]) <= tol.eps_geom &&
                            dot(normals[t], normals[s]) > 0.0;
      if (coplanar) parent[find_root(parent, s)] = find_root(parent, t);
    }
  }

  std::map<std::size_t, std::map<std::size_t, std::size_t>> next_in_group;  // root -> (from -> to)
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const std::size_t r = find_root(parent, t);
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tris[t][k];
      const std::size_t b = tris[t][(k + 1) % 3];
      if (find_root(parent, owner.at({b, a})) == r) continue;
      auto [it, inserted] = next_in_group[r].emplace(a, b);
      if (!inserted) throw GeometryError(ErrorCode::Internal, "merged hull face is not a disk");
    }
  }
  std::vector<std::vector<std::size_t>> loops;
  for (auto& [root, next] : next_in_group) {
    std::vector<std::size_t> loop;
    const std::size_t start = next.begin()->first;
    std::size_t cur = start;
    do {
      loop.push_back(cur);
      auto it = next.find(cur);
      if (it == next.end() || loop.size() > next.size()) {
        throw GeometryError(ErrorCode::Internal, "merged hull face boundary is not a cycle");
      }
      cur = it->second;
    } while (cur != start);
    if (loop.size() != next.size()) {
      throw GeometryError(ErrorCode::Internal, "merged hull face has several boundary cycles");
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

Polyhedron::Polyhedron(std::vector<Point3> vertices, std::vector<std::vector<std::size_t>> face_loops)
    : vertices_(std::move(vertices)) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> directed;
  for (std::size_t f = 0; f < face_loops.size(); ++f) {
    auto& loop = face_loops[f];
    if (loop.size() < 3) throw GeometryError(ErrorCode::Degenerate, "face with fewer than three vertices");
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::size_t a = loop[i];
      const std::size_t b = loop[(i + 1) % loop.size()];
      if (a >= vertices_.size() || b >= vertices_.size()) {
        throw GeometryError(ErrorCode::InvalidArgument, "face references a missing vertex");
      }
      if (a == b) throw GeometryError(ErrorCode::Degenerate, "face repeats a vertex");
      if (!directed.emplace(std::pair{a, b}, f).second) {
        throw GeometryError(ErrorCode::Degenerate, "directed edge used by two faces (non-manifold or flipped face)");
      }
    }
    faces_.push_back(make_face(vertices_, std::move(loop)));
  }
  for (const auto& [e, f] : directed) {
    auto twin = directed.find({e.second, e.first});
    if (twin == directed.end()) {
      throw GeometryError(ErrorCode::Degenerate, "surface is not closed: edge with a single face");
    }
    if (e.first < e.second) edges_[{e.first, e.second}] = EdgeFaces{f, twin->second};
  }
}

std::size_t Polyhedron::neighbor_across(std::size_t face, std::size_t u, std::size_t v) const {
  const auto& ef = edges_.at(edge_key(u, v));
  return ef.forward == face ? ef.backward : ef.forward;
}

double Polyhedron::volume() const {
  double vol = 0.0;
  for (const auto& f : faces_) {
    const double area = 0.5 * norm(newell_normal(vertices_, f.vertices));
    vol += area * f.offset / 3.0;
  }
  return vol;
}

bool Polyhedron::operator==(const Polyhedron& o) const {
  if (vertices_ != o.vertices_ || faces_.size() != o.faces_.size()) return false;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].vertices != o.faces_[i].vertices) return false;
  }
  return true;
}

std::vector<std::string> validate_polyhedron(const Polyhedron& p, const Tolerances& tol) {
  std::vector<std::string> problems;
  auto report = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    problems.push_back(os.str());
  };
  const auto& verts = p.vertices();
  const auto& faces = p.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.vertices.size() < 3) report("face ", f, " has fewer than 3 vertices");
    for (auto v : face.vertices) {
      if (std::abs(face.signed_distance(verts[v])) > tol.eps_geom) report("face ", f, " is not planar");
    }
    for (std::size_t i = 0; i < face.vertices.size(); ++i) {
      const Point3& a = verts[face.vertices[i]];
      const Point3& b = verts[face.vertices[(i + 1) % face.vertices.size()]];
      const Point3& c = verts[face.vertices[(i + 2) % face.vertices.size()]];
      if (dot(cross(b - a, c - b), face.normal) <= 0.0) report("face ", f, " is not strictly convex");
    }
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (face.signed_distance(verts[v]) > tol.eps_geom) {
        report("vertex ", v, " lies outside face ", f);
        break;
      }
    }
  }
  for (const auto& [e, ef] : p.edges()) {
    const auto& f1 = faces[ef.forward];
    const auto& f2 = faces[ef.backward];
    bool coplanar = dot(f1.normal, f2.normal) > 0.0;
    for (auto v : f2.vertices) coplanar = coplanar && std::abs(f1.signed_distance(verts[v])) <= tol.eps_geom;
    if (coplanar) report("faces ", ef.forward, " and ", ef.backward, " are coplanar neighbours");
  }
  const long euler = static_cast<long>(p.vertex_count()) - static_cast<long>(p.edge_count()) +
                     static_cast<long>(p.face_count());
  if (euler != 2) report("Euler characteristic is ", euler, ", expected 2");
  return problems;
}

HullResult convex_hull_indexed(std::span<const Point3> points, const Tolerances& tol) {
  tol.validate();
  if (points.size() < 4) throw GeometryError(ErrorCode::DegenerateHull, "a 3D hull needs at least four points");
  for (const auto& p : points) {
    if (!is_finite(p)) throw GeometryError(ErrorCode::NonFinite, "hull input has a non-finite coordinate");
  }
  IncrementalHull builder(points, tol);
  const auto tris = builder.run();
  auto loops = merge_coplanar(points, tris, tol);

  // Collinear points survive as vertices of exactly two merged faces; drop them.
  std::map<std::size_t, int> incidence;
  for (const auto& loop : loops) {
    for (auto v : loop) ++incidence[v];
  }
  for (auto& loop : loops) {
    std::erase_if(loop, [&](std::size_t v) { return incidence[v] < 3; });
  }

  HullResult result;
  std::map<std::size_t, std::size_t> remap;
  for (const auto& [v, count] : incidence) {
    if (count < 3) continue;
    remap[v] = result.source.size();
    result.source.push_back(v);
  }
  std::vector<Point3> verts;
  verts.reserve(result.source.size());
  for (auto s : result.source) verts.push_back(points[s]);
  for (auto& loop : loops) {
    for (auto& v : loop) v = remap.at(v);
    std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
  }
  std::sort(loops.begin(), loops.end());
  result.polyhedron = Polyhedron(std::move(verts), std::move(loops));
  return result;
}

HullResult convex_hull_indexed(std::span<const Point3> points) {
  return convex_hull_indexed(points, Tolerances::for_points(points));
}

Polyhedron convex_hull(std::span<const Point3> points, const Tolerances& tol) {
  return convex_hull_indexed(points, tol).polyhedron;
}

Polyhedron convex_hull(std::span<const Point3> points) { return convex_hull_indexed(points).polyhedron; }

std::vector<std::size_t> upward_faces(const Polyhedron& p, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < p.face_count(); ++f) {
    if (p.faces()[f].normal.z > tol.eps_angle) out.push_back(f);
  }
  return out;
}

std::vector<std::size_t> downward_faces(const Polyhedron& p, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < p.face_count(); ++f) {
    if (p.faces()[f].normal.z < -tol.eps_angle) out.push_back(f);
  }
  return out;
}

}  // namespace jcap
