#include "jcap/extend.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace jcap {
namespace {

// Slack for membership tests on points that may lie far from the cap.
double scaled_eps(const Tolerances& tol, const Point3& q, const Point3& center, double diam) {
  return tol.eps_geom * (1.0 + distance(q, center) / std::max(diam, 1e-300));
}

bool same_plane(const Plane& p, const Plane& q, const Tolerances& tol) {
  return std::abs(p.a - q.a) <= tol.eps_angle && std::abs(p.b - q.b) <= tol.eps_angle &&
         std::abs(p.c - q.c) <= tol.eps_geom;
}

std::vector<Plane> distinct_planes(const std::vector<Plane>& planes, const Tolerances& tol) {
  std::vector<Plane> out;
  for (const auto& p : planes) {
    if (std::none_of(out.begin(), out.end(), [&](const Plane& q) { return same_plane(p, q, tol); })) {
      out.push_back(p);
    }
  }
  return out;
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// True when (0, 0) lies strictly inside the convex hull of the plane gradients
// (a, b): then every recession direction of the half-space intersection points
// downward and the limit angle is a pointed cone.
bool gradients_surround_origin(const std::vector<Plane>& planes, double margin) {
  std::vector<std::pair<double, double>> g;
  for (const auto& p : planes) g.emplace_back(p.a, p.b);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.size() < 3) return false;
  // Andrew's monotone chain, counterclockwise.
  std::vector<std::pair<double, double>> hull(2 * g.size());
  std::size_t k = 0;
  auto turn = [](const auto& o, const auto& a, const auto& b) {
    return cross2(a.first - o.first, a.second - o.second, b.first - o.first, b.second - o.second);
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], g[i]) <= 0.0) --k;
    hull[k++] = g[i];
  }
  for (std::size_t i = g.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], g[i]) <= 0.0) --k;
    hull[k++] = g[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.first - a.first, b.second - a.second);
    if (cross2(b.first - a.first, b.second - a.second, -a.first, -a.second) <= margin * len) return false;
  }
  return true;
}

}  // namespace

Plane face_plane(const Face& f, const Tolerances& tol) {
  if (std::abs(f.normal.z) <= tol.eps_angle) {
    throw GeometryError(ErrorCode::VerticalPlane, "face plane is vertical");
  }
  return Plane{-f.normal.x / f.normal.z, -f.normal.y / f.normal.z, f.offset / f.normal.z};
}

std::vector<Plane> boundary_face_planes(const Cap& c, const Tolerances& tol) {
  std::vector<Plane> planes;
  for (auto f : c.boundary_faces) {
    try {
      planes.push_back(face_plane(c.parent.faces()[f], tol));
    } catch (const GeometryError&) {
      throw GeometryError(ErrorCode::Internal, "boundary face " + std::to_string(f) + " of the cap is vertical");
    }
  }
  return planes;
}

Point3 dualize_plane(const Plane& p) { return {p.a, p.b, -p.c}; }

Plane dualize_point(const Point3& q) { return {q.x, q.y, -q.z}; }

std::vector<Point3> lower_envelope_vertices(const std::vector<Plane>& planes, const Tolerances& tol) {
  const auto unique = distinct_planes(planes, tol);
  if (unique.size() < 3) return {};
  std::vector<Point3> dual;
  dual.reserve(unique.size());
  for (const auto& p : unique) dual.push_back(dualize_plane(p));

  const Tolerances dual_tol = Tolerances::for_points(dual);
  std::vector<Point3> out;
  try {
    const Polyhedron hull = convex_hull(dual, dual_tol);
    // A point lies below every primal plane iff its dual plane passes above
    // every dual point, so envelope vertices are the upper dual faces.
    for (auto f : upward_faces(hull, dual_tol)) {
      out.push_back(dualize_plane(face_plane(hull.faces()[f], dual_tol)));
    }
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::DegenerateHull) throw;
    // Coplanar dual points: the planes are concurrent (one vertex) unless the
    // dual points are collinear or their plane is vertical. The points are in
    // no particular order, so the plane comes from a well-spread triple.
    std::size_t i0 = 0;
    std::size_t i1 = 0;
    for (std::size_t i = 0; i < dual.size(); ++i) {
      for (std::size_t j = i + 1; j < dual.size(); ++j) {
        if (distance(dual[i], dual[j]) > distance(dual[i0], dual[i1])) {
          i0 = i;
          i1 = j;
        }
      }
    }
    std::size_t i2 = i0;
    double best = 0.0;
    for (std::size_t k = 0; k < dual.size(); ++k) {
      const double a = norm(cross(dual[i1] - dual[i0], dual[k] - dual[i0]));
      if (a > best) {
        best = a;
        i2 = k;
      }
    }
    try {
      const std::vector<Point3> triple{dual[i0], dual[i1], dual[i2]};
      out.push_back(dualize_plane(plane_through(triple, dual_tol)));
    } catch (const GeometryError& inner) {
      if (inner.code() != ErrorCode::Degenerate && inner.code() != ErrorCode::VerticalPlane) throw;
    }
  }
  return out;
}

RaysAndFaces build_rays(const BoundedBoundary& b, const Tolerances& tol) {
  const std::size_t n = b.boundary.size();
  if (b.edge_plane.size() != n || n < 3) {
    throw GeometryError(ErrorCode::InvalidArgument, "boundary and edge-plane lists must match (>= 3 edges)");
  }
  std::vector<std::size_t> transitions;  // positions i where edge i-1 and edge i change plane
  for (std::size_t i = 0; i < n; ++i) {
    if (b.edge_plane[(i + n - 1) % n] != b.edge_plane[i]) transitions.push_back(i);
  }
  if (transitions.size() < 3) {
    throw GeometryError(ErrorCode::DegenerateExtension,
                        "boundary meets only " + std::to_string(transitions.size()) + " distinct planes");
  }

  RaysAndFaces out;
  for (auto i : transitions) {
    const Vec3& n_in = b.plane_normals[b.edge_plane[(i + n - 1) % n]];
    const Vec3& n_out = b.plane_normals[b.edge_plane[i]];
    Vec3 d = cross(n_in, n_out);
    if (norm(d) <= tol.eps_angle) {
      throw GeometryError(ErrorCode::Internal, "adjacent unbounded faces are parallel");
    }
    d = normalized(d);
    if (d.z > 0.0) d = -d;
    if (d.z >= -tol.eps_angle) {
      throw GeometryError(ErrorCode::DegenerateExtension, "horizontal unbounded edge");
    }
    const std::size_t v = b.boundary[i];
    out.rays.push_back(Ray{v, b.vertices[v], d});
  }
  const std::size_t m = transitions.size();
  for (std::size_t j = 0; j < m; ++j) {
    UnboundedFace face;
    const std::size_t pid = b.edge_plane[transitions[j]];
    face.plane = b.planes[pid];
    face.normal = b.plane_normals[pid];
    const std::size_t end = transitions[(j + 1) % m];
    std::size_t i = transitions[j];
    face.chain.push_back(b.boundary[i]);
    do {
      i = (i + 1) % n;
      face.chain.push_back(b.boundary[i]);
    } while (i != end);
    face.left_ray = j;
    face.right_ray = (j + 1) % m;
    out.faces.push_back(std::move(face));
  }
  return out;
}

Extension build_extension(const Cap& c, const Tolerances& tol) {
  const auto& parent = c.parent;
  const auto bplanes = distinct_planes(boundary_face_planes(c, tol), tol);
  if (bplanes.size() < 3) {
    return DegenerateExtension{"fewer than three distinct boundary-face planes; the extension is bounded by " +
                                   std::to_string(bplanes.size()) + " plane(s) and has no vertex",
                               bplanes};
  }
  if (!gradients_surround_origin(bplanes, tol.eps_angle)) {
    return DegenerateExtension{"boundary-face gradients do not surround the vertical; the limit angle is not a "
                               "pointed downward cone",
                               bplanes};
  }

  // Cap faces, their explicit planes, and the cap vertices.
  std::vector<Plane> cap_planes;
  std::vector<Vec3> cap_normals;
  for (auto f : c.face_ids) {
    cap_planes.push_back(face_plane(parent.faces()[f], tol));
    cap_normals.push_back(parent.faces()[f].normal);
  }
  const auto cap_ids = c.vertex_ids();
  std::vector<Point3> joined;
  for (auto v : cap_ids) joined.push_back(parent.vertices()[v]);
  const double diam = bounding_box_diameter(joined);
  Point3 center{};
  for (const auto& p : joined) center += p;
  center = center / static_cast<double>(joined.size());

  // Envelope vertices of the boundary planes. Those over the cap interior can
  // sit above the cap; only points inside every cap half-space are vertices of
  // the extension.
  const std::size_t cap_count = joined.size();
  for (const auto& q : lower_envelope_vertices(bplanes, tol)) {
    const double eps = scaled_eps(tol, q, center, diam);
    bool inside = true;
    for (auto f : c.face_ids) inside = inside && parent.faces()[f].signed_distance(q) <= eps;
    if (!inside) continue;
    const bool duplicate = std::any_of(joined.begin(), joined.end(),
                                       [&](const Point3& p) { return distance(p, q) <= eps; });
    if (!duplicate) joined.push_back(q);
  }

  Tolerances join_tol = tol;
  join_tol.eps_geom = std::max(tol.eps_geom, 1e-13 * bounding_box_diameter(joined));
  const HullResult hull = convex_hull_indexed(joined, join_tol);
  const auto& hp = hull.polyhedron;

  // Keep upward hull faces lying in a cap plane; steep faces bridging across
  // the outline are not part of the surface.
  std::vector<std::optional<std::size_t>> face_owner(hp.face_count());
  for (auto f : upward_faces(hp, tol)) {
    for (std::size_t k = 0; k < c.face_ids.size(); ++k) {
      const Face& cf = parent.faces()[c.face_ids[k]];
      if (dot(cf.normal, hp.faces()[f].normal) <= 0.0) continue;
      const bool on_plane = std::all_of(hp.faces()[f].vertices.begin(), hp.faces()[f].vertices.end(), [&](auto v) {
        const Point3& p = hp.vertices()[v];
        return std::abs(cf.signed_distance(p)) <= scaled_eps(tol, p, center, diam);
      });
      if (on_plane) {
        face_owner[f] = k;
        break;
      }
    }
  }

  // Re-index: vertices of kept faces, in hull order.
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t f = 0; f < hp.face_count(); ++f) {
    if (!face_owner[f]) continue;
    for (auto v : hp.faces()[f].vertices) remap.emplace(v, 0);
  }
  UnboundedPolyhedron u;
  for (auto& [hv, id] : remap) {
    id = u.vertices.size();
    u.vertices.push_back(hp.vertices()[hv]);
    const std::size_t src = hull.source[hv];
    if (src < cap_count) {
      u.cap_vertex.push_back(cap_ids[src]);
    } else {
      u.cap_vertex.push_back(std::nullopt);
      u.new_vertices.push_back(id);
    }
  }

  std::map<std::size_t, std::size_t> next;
  std::map<std::size_t, std::size_t> edge_owner;  // from-vertex -> cap plane index
  for (std::size_t f = 0; f < hp.face_count(); ++f) {
    if (!face_owner[f]) continue;
    Face bf = hp.faces()[f];
    for (auto& v : bf.vertices) v = remap.at(v);
    const auto& loop = hp.faces()[f].vertices;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::size_t a = loop[i];
      const std::size_t b = loop[(i + 1) % loop.size()];
      if (face_owner[hp.neighbor_across(f, a, b)]) continue;
      if (!next.emplace(remap.at(a), remap.at(b)).second) {
        throw GeometryError(ErrorCode::Internal, "bounded part of the extension is pinched at a vertex");
      }
      edge_owner[remap.at(a)] = *face_owner[f];
    }
    u.bounded_faces.push_back(std::move(bf));
  }
  if (next.empty()) throw GeometryError(ErrorCode::Internal, "bounded part of the extension has no boundary");
  const std::size_t start = next.begin()->first;
  std::size_t cur = start;
  do {
    u.boundary.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end() || u.boundary.size() > next.size()) {
      throw GeometryError(ErrorCode::Internal, "boundary of the extension's bounded part is not a cycle");
    }
    cur = it->second;
  } while (cur != start);
  if (u.boundary.size() != next.size()) {
    throw GeometryError(ErrorCode::Internal, "bounded part of the extension has several boundary cycles");
  }

  BoundedBoundary bb;
  bb.vertices = u.vertices;
  bb.boundary = u.boundary;
  for (auto v : u.boundary) bb.edge_plane.push_back(edge_owner.at(v));
  bb.planes = cap_planes;
  bb.plane_normals = cap_normals;
  auto rf = build_rays(bb, tol);
  u.rays = std::move(rf.rays);
  u.unbounded_faces = std::move(rf.faces);
  return u;
}

std::vector<std::string> validate_extension(const Cap& c, const UnboundedPolyhedron& u, const Tolerances& tol) {
  std::vector<std::string> problems;
  auto report = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    problems.push_back(os.str());
  };
  const auto& parent = c.parent;
  const auto cap_ids = c.vertex_ids();
  std::vector<Point3> cap_pts;
  for (auto v : cap_ids) cap_pts.push_back(parent.vertices()[v]);
  const double diam = bounding_box_diameter(cap_pts);
  Point3 center{};
  for (const auto& p : cap_pts) center += p;
  center = center / static_cast<double>(cap_pts.size());

  if (u.rays.size() != u.unbounded_faces.size() || u.rays.size() < 3) {
    report("expected matching ray and unbounded-face counts >= 3, got ", u.rays.size(), " and ",
           u.unbounded_faces.size());
  }
  if (u.unbounded_faces.size() > c.boundary_faces.size()) {
    report("more unbounded faces (", u.unbounded_faces.size(), ") than boundary faces (", c.boundary_faces.size(),
           ")");
  }
  // The extension lies below every plane it is built from and contains the cap.
  for (std::size_t j = 0; j < u.unbounded_faces.size(); ++j) {
    const auto& face = u.unbounded_faces[j];
    for (std::size_t k = 0; k < cap_pts.size(); ++k) {
      if (face.plane.height_above(cap_pts[k]) > scaled_eps(tol, cap_pts[k], center, diam)) {
        report("cap vertex ", cap_ids[k], " lies above unbounded face ", j);
      }
    }
    for (auto v : face.chain) {
      const Point3& p = u.vertices[v];
      if (std::abs(dot(face.normal, p) - dot(face.normal, u.vertices[face.chain.front()])) >
          scaled_eps(tol, p, center, diam)) {
        report("chain vertex ", v, " is off the plane of unbounded face ", j);
      }
    }
    const std::size_t next = (j + 1) % u.unbounded_faces.size();
    if (face.right_ray != u.unbounded_faces[next].left_ray) {
      report("unbounded faces ", j, " and ", next, " do not share a ray");
    }
    for (auto r : {face.left_ray, face.right_ray}) {
      if (std::abs(dot(face.normal, u.rays[r].direction)) > tol.eps_angle * 10.0) {
        report("ray ", r, " is not in the plane of unbounded face ", j);
      }
    }
  }
  for (std::size_t r = 0; r < u.rays.size(); ++r) {
    const Vec3& d = u.rays[r].direction;
    if (!(d.z < 0.0)) report("ray ", r, " does not point down");
    for (auto f : c.face_ids) {
      if (dot(parent.faces()[f].normal, d) > tol.eps_angle * 10.0) {
        report("ray ", r, " leaves the half-space of cap face ", f);
        break;
      }
    }
  }
  // Every cap face plane survives unchanged.
  for (auto f : c.face_ids) {
    const Face& cf = parent.faces()[f];
    const bool found = std::any_of(u.bounded_faces.begin(), u.bounded_faces.end(), [&](const Face& bf) {
      return dot(bf.normal, cf.normal) > 1.0 - 1e-9 &&
             std::all_of(cf.vertices.begin(), cf.vertices.end(), [&](auto v) {
               return std::abs(dot(bf.normal, parent.vertices()[v]) - bf.offset) <= tol.eps_geom;
             });
    });
    if (!found) report("cap face ", f, " is not carried into the extension");
  }
  for (auto v : u.new_vertices) {
    for (auto f : c.face_ids) {
      if (parent.faces()[f].signed_distance(u.vertices[v]) > scaled_eps(tol, u.vertices[v], center, diam)) {
        report("new vertex ", v, " lies above cap face ", f);
        break;
      }
    }
  }
  return problems;
}

}  // namespace jcap
