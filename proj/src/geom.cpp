#include "jcap/geom.hpp"

#include <algorithm>
#include <limits>

namespace jcap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::VerticalPlane: return "VerticalPlane";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::EmptyCap: return "EmptyCap";
    case ErrorCode::NoBoundary: return "NoBoundary";
    case ErrorCode::LemmaViolation: return "LemmaViolation";
    case ErrorCode::DegenerateExtension: return "DegenerateExtension";
    case ErrorCode::DegenerateLimitAngle: return "DegenerateLimitAngle";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError(ErrorCode::Degenerate, "cannot normalize a zero or non-finite vector");
  }
  return v / n;
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis) {
  const Vec3 c = cross(a, b);
  const double s = norm(c);
  const double sign = dot(c, axis) < 0.0 ? -1.0 : 1.0;
  return std::atan2(sign * s, dot(a, b));
}

double bounding_box_diameter(std::span<const Point3> points) {
  if (points.empty()) return 0.0;
  Vec3 lo = points.front();
  Vec3 hi = points.front();
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

Tolerances Tolerances::for_points(std::span<const Point3> points) {
  Tolerances tol;
  tol.eps_geom = std::max(1e-9 * bounding_box_diameter(points), 1e-12);
  tol.eps_area = tol.eps_geom * tol.eps_geom;
  return tol;
}

void Tolerances::validate() const {
  if (!(eps_geom > 0.0) || !(eps_angle > 0.0) || !(eps_area > 0.0)) {
    throw GeometryError(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
}

Sign orient3d(const Point3& p0, const Point3& p1, const Point3& p2, const Point3& q,
              const Tolerances& tol) {
  if (!is_finite(p0) || !is_finite(p1) || !is_finite(p2) || !is_finite(q)) {
    throw GeometryError(ErrorCode::NonFinite, "orient3d received a non-finite coordinate");
  }
  const Vec3 e1 = p1 - p0;
  const Vec3 e2 = p2 - p0;
  const double volume = dot(cross(e1, e2), q - p0);
  const double scale = norm(e1) * norm(e2);
  if (std::abs(volume) <= tol.eps_geom * scale) return Sign::Zero;
  return volume > 0.0 ? Sign::Pos : Sign::Neg;
}

double normal_angle_to_z(const Vec3& n) {
  if (!is_finite(n)) throw GeometryError(ErrorCode::NonFinite, "normal has a non-finite component");
  if (n == Vec3{}) throw GeometryError(ErrorCode::Degenerate, "zero normal vector");
  return angle_between(n, Vec3{0.0, 0.0, 1.0});
}

Plane plane_through(std::span<const Point3> face_points, const Tolerances& tol) {
  if (face_points.size() < 3) {
    throw GeometryError(ErrorCode::Degenerate, "a plane needs at least three points");
  }
  Vec3 centroid{};
  for (const auto& p : face_points) {
    if (!is_finite(p)) throw GeometryError(ErrorCode::NonFinite, "face point is not finite");
    centroid += p;
  }
  centroid = centroid / static_cast<double>(face_points.size());

  Vec3 newell{};
  for (std::size_t i = 0; i < face_points.size(); ++i) {
    newell += cross(face_points[i] - centroid, face_points[(i + 1) % face_points.size()] - centroid);
  }
  const double diam = bounding_box_diameter(face_points);
  if (norm(newell) <= tol.eps_geom * diam) {
    throw GeometryError(ErrorCode::Degenerate, "face points are collinear");
  }
  const Vec3 n = normalized(newell);
  if (std::abs(n.z) <= tol.eps_angle) {
    throw GeometryError(ErrorCode::VerticalPlane, "face plane is vertical");
  }
  const Plane plane{-n.x / n.z, -n.y / n.z, dot(n, centroid) / n.z};
  for (const auto& p : face_points) {
    // Vertical residual of a point at perpendicular distance d is d / |n.z|.
    if (std::abs(dot(n, p - centroid)) > tol.eps_geom) {
      throw GeometryError(ErrorCode::Degenerate, "face points are not coplanar");
    }
  }
  return plane;
}

double spherical_polygon_area(std::span<const Vec3> dirs, const Tolerances& tol) {
  const std::size_t k = dirs.size();
  if (k < 3) throw GeometryError(ErrorCode::Degenerate, "spherical polygon needs three vertices");
  for (std::size_t i = 0; i < k; ++i) {
    if (!is_finite(dirs[i])) throw GeometryError(ErrorCode::NonFinite, "direction is not finite");
    for (std::size_t j = i + 1; j < k; ++j) {
      const double ang = angle_between(dirs[i], dirs[j]);
      if (ang <= tol.eps_angle || ang >= kPi - tol.eps_angle) {
        throw GeometryError(ErrorCode::Degenerate, "spherical polygon has equal or antipodal vertices");
      }
    }
  }
  Vec3 axis{};
  for (std::size_t i = 0; i < k; ++i) axis += cross(dirs[i], dirs[(i + 1) % k]);
  if (norm(axis) > 0.0) {
    const Vec3 n = normalized(axis);
    const bool on_great_circle = std::all_of(dirs.begin(), dirs.end(), [&](const Vec3& d) {
      return std::abs(dot(d, n)) <= tol.eps_angle;
    });
    if (on_great_circle) {
      throw GeometryError(ErrorCode::Degenerate, "spherical polygon lies on a great circle");
    }
  }

  double angle_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& prev = dirs[(i + k - 1) % k];
    const Vec3& cur = dirs[i];
    const Vec3& next = dirs[(i + 1) % k];
    // Tangents at `cur` of the great-circle arcs towards its neighbours.
    const Vec3 t_prev = prev - cur * dot(prev, cur);
    const Vec3 t_next = next - cur * dot(next, cur);
    angle_sum += angle_between(t_prev, t_next);
  }
  return angle_sum - static_cast<double>(k - 2) * kPi;
}

}  // namespace jcap
