#include "jcap/limit_angle.hpp"

#include <algorithm>

namespace jcap {
namespace {

// Directed-edge endpoint standing for "infinity along ray r".
constexpr std::size_t kIdealBase = std::numeric_limits<std::size_t>::max() / 2;
std::size_t ideal_code(std::size_t ray) { return kIdealBase + ray; }

}  // namespace

FanSurface::FanSurface(std::vector<Point3> vertices, std::vector<SurfaceFace> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& face = faces_[f];
    const auto& loop = face.loop;
    auto add = [&](std::size_t a, std::size_t b) {
      if (!directed_.emplace(std::pair{a, b}, f).second) {
        throw GeometryError(ErrorCode::Internal, "surface uses a directed edge twice");
      }
    };
    if (face.unbounded) {
      add(ideal_code(face.in_ray), loop.front());
      for (std::size_t i = 0; i + 1 < loop.size(); ++i) add(loop[i], loop[i + 1]);
      add(loop.back(), ideal_code(face.out_ray));
    } else {
      for (std::size_t i = 0; i < loop.size(); ++i) add(loop[i], loop[(i + 1) % loop.size()]);
    }
  }
}

FanSurface FanSurface::from_polyhedron(const Polyhedron& p) {
  std::vector<SurfaceFace> faces;
  for (const auto& f : p.faces()) faces.push_back(SurfaceFace{f.vertices, f.normal, false, {}, {}, 0, 0});
  return FanSurface(p.vertices(), std::move(faces));
}

FanSurface FanSurface::from_cap(const Cap& c) {
  std::vector<SurfaceFace> faces;
  for (auto f : c.face_ids) {
    faces.push_back(SurfaceFace{c.parent.faces()[f].vertices, c.parent.faces()[f].normal, false, {}, {}, 0, 0});
  }
  return FanSurface(c.parent.vertices(), std::move(faces));
}

FanSurface FanSurface::from_unbounded(const UnboundedPolyhedron& u) {
  std::vector<SurfaceFace> faces;
  for (const auto& f : u.bounded_faces) faces.push_back(SurfaceFace{f.vertices, f.normal, false, {}, {}, 0, 0});
  for (const auto& uf : u.unbounded_faces) {
    SurfaceFace sf;
    sf.loop.assign(uf.chain.rbegin(), uf.chain.rend());
    sf.normal = uf.normal;
    sf.unbounded = true;
    sf.in_ray = uf.right_ray;
    sf.out_ray = uf.left_ray;
    sf.from_ideal = -u.rays[uf.right_ray].direction;
    sf.to_ideal = u.rays[uf.left_ray].direction;
    faces.push_back(std::move(sf));
  }
  return FanSurface(u.vertices, std::move(faces));
}

double FanSurface::corner_angle(std::size_t face, std::size_t v) const {
  const auto& f = faces_.at(face);
  const auto& loop = f.loop;
  const auto it = std::find(loop.begin(), loop.end(), v);
  if (it == loop.end()) throw GeometryError(ErrorCode::InvalidArgument, "vertex is not on the face");
  const std::size_t i = static_cast<std::size_t>(it - loop.begin());
  const std::size_t n = loop.size();
  const Point3& p = vertices_[v];
  Vec3 in_dir;
  Vec3 out_dir;
  if (f.unbounded) {
    in_dir = i == 0 ? f.from_ideal : p - vertices_[loop[i - 1]];
    out_dir = i + 1 == n ? f.to_ideal : vertices_[loop[i + 1]] - p;
  } else {
    in_dir = p - vertices_[loop[(i + n - 1) % n]];
    out_dir = vertices_[loop[(i + 1) % n]] - p;
  }
  // Interior angle from the turn at the corner; reflex corners of unbounded
  // faces come out above pi.
  return kPi - signed_angle(in_dir, out_dir, f.normal);
}

std::vector<std::size_t> FanSurface::fan(std::size_t v) const {
  auto out_edge = [&](std::size_t f) -> std::pair<std::size_t, std::size_t> {
    const auto& face = faces_[f];
    const auto& loop = face.loop;
    const auto i = static_cast<std::size_t>(std::find(loop.begin(), loop.end(), v) - loop.begin());
    if (face.unbounded) {
      return {v, i + 1 == loop.size() ? ideal_code(face.out_ray) : loop[i + 1]};
    }
    return {v, loop[(i + 1) % loop.size()]};
  };
  std::size_t start = faces_.size();
  for (const auto& [e, f] : directed_) {
    if (e.first == v) {
      start = f;
      break;
    }
  }
  if (start == faces_.size()) throw GeometryError(ErrorCode::InvalidArgument, "vertex has no incident face");
  std::vector<std::size_t> order;
  std::size_t cur = start;
  do {
    order.push_back(cur);
    const auto [a, b] = out_edge(cur);
    const auto twin = directed_.find({b, a});
    if (twin == directed_.end()) {
      throw GeometryError(ErrorCode::BoundaryVertex, "vertex " + std::to_string(v) + " has an open fan");
    }
    cur = twin->second;
    if (order.size() > faces_.size()) throw GeometryError(ErrorCode::Internal, "fan does not close");
  } while (cur != start);
  return order;
}

LimitAngle build_limit_angle(const UnboundedPolyhedron& u, const Point3& apex) {
  if (u.rays.size() < 3) {
    throw GeometryError(ErrorCode::DegenerateLimitAngle,
                        "a limit angle needs at least three rays, got " + std::to_string(u.rays.size()));
  }
  LimitAngle v;
  v.apex = apex;
  for (const auto& r : u.rays) v.directions.push_back(normalized(r.direction));
  return v;
}

UnboundedPolyhedron cone_as_unbounded(const LimitAngle& v) {
  const std::size_t m = v.directions.size();
  if (m < 3) throw GeometryError(ErrorCode::DegenerateLimitAngle, "a cone needs at least three directions");
  UnboundedPolyhedron u;
  u.vertices = {v.apex};
  u.cap_vertex = {std::nullopt};
  u.boundary = {0};
  u.new_vertices = {0};
  for (const auto& d : v.directions) u.rays.push_back(Ray{0, v.apex, normalized(d)});
  for (std::size_t j = 0; j < m; ++j) {
    UnboundedFace f;
    // The face between consecutive directions; outward normal for a cone
    // whose directions run counterclockwise seen from above.
    f.normal = normalized(cross(v.directions[j], v.directions[(j + 1) % m]));
    if (std::abs(f.normal.z) > 0.0) {
      f.plane = Plane{-f.normal.x / f.normal.z, -f.normal.y / f.normal.z, dot(f.normal, v.apex) / f.normal.z};
    }
    f.chain = {0};
    f.left_ray = j;
    f.right_ray = (j + 1) % m;
    u.unbounded_faces.push_back(std::move(f));
  }
  return u;
}

double vertex_curvature(const FanSurface& s, std::size_t v) {
  double sum = 0.0;
  for (auto f : s.fan(v)) sum += s.corner_angle(f, v);
  return kTwoPi - sum;
}

double limit_apex_curvature(const LimitAngle& v, const Tolerances& tol) {
  const std::size_t m = v.directions.size();
  if (m < 3) throw GeometryError(ErrorCode::DegenerateLimitAngle, "a cone needs at least three directions");
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = angle_between(v.directions[i], v.directions[(i + 1) % m]);
    if (a <= tol.eps_angle) throw GeometryError(ErrorCode::DegenerateLimitAngle, "repeated cone direction");
    sum += a;
  }
  if (sum >= kTwoPi - tol.eps_angle) {
    throw GeometryError(ErrorCode::DegenerateLimitAngle, "cone directions are flat or not convex");
  }
  return kTwoPi - sum;
}

double spherical_image_curvature(const FanSurface& s, std::size_t v, const Tolerances& tol) {
  std::vector<Vec3> normals;
  for (auto f : s.fan(v)) {
    const Vec3& n = s.faces()[f].normal;
    if (normals.empty() || angle_between(normals.back(), n) > tol.eps_angle) normals.push_back(n);
  }
  while (normals.size() > 1 && angle_between(normals.back(), normals.front()) <= tol.eps_angle) {
    normals.pop_back();
  }
  if (normals.size() < 3) return 0.0;
  try {
    return spherical_polygon_area(normals, tol);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::Degenerate) return 0.0;
    throw;
  }
}

CurvatureReport verify_curvature_identity(const UnboundedPolyhedron& u, const LimitAngle& v,
                                          const Tolerances& tol, double identity_tolerance) {
  CurvatureReport r;
  r.identity_tolerance = identity_tolerance;
  const FanSurface s = FanSurface::from_unbounded(u);
  for (std::size_t i = 0; i < u.vertices.size(); ++i) {
    const double omega = vertex_curvature(s, i);
    r.per_vertex[i] = omega;
    r.total_extension += omega;
    if (i < u.cap_vertex.size() && u.cap_vertex[i]) r.total_cap += omega;
    const double area = spherical_image_curvature(s, i, tol);
    if (area > 0.0) {
      ++r.strictly_convex_vertices;
      r.spherical_image_gap = std::max(r.spherical_image_gap, std::abs(area - omega));
    }
  }
  r.limit_apex = limit_apex_curvature(v, tol);
  r.identity_gap = std::abs(r.total_extension - r.limit_apex);
  r.bound_margin = kTwoPi - r.total_extension;
  r.identity_holds = r.identity_gap < identity_tolerance;
  r.bound_holds = r.bound_margin > 0.0;
  return r;
}

bool limit_angle_inside(const UnboundedPolyhedron& u, const LimitAngle& v, const Tolerances& tol) {
  std::vector<std::pair<Vec3, double>> halfspaces;
  for (const auto& f : u.bounded_faces) halfspaces.emplace_back(f.normal, f.offset);
  for (const auto& f : u.unbounded_faces) {
    halfspaces.emplace_back(f.normal, dot(f.normal, u.vertices[f.chain.front()]));
  }
  for (const auto& [n, d] : halfspaces) {
    if (dot(n, v.apex) - d > tol.eps_geom) return false;
    for (const auto& dir : v.directions) {
      if (dot(n, dir) > tol.eps_angle) return false;
    }
  }
  return true;
}

}  // namespace jcap
