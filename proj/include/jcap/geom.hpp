// Geometric primitives shared by every stage of the cap pipeline: vectors,
// non-vertical planes in explicit form, tolerances, the orientation predicate
// and a few spherical-geometry helpers.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  NonFinite,
  VerticalPlane,
  Degenerate,
  DegenerateHull,
  EmptyCap,
  NoBoundary,
  LemmaViolation,
  DegenerateExtension,
  DegenerateLimitAngle,
  BoundaryVertex,
  Parse,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers (and the CLI
/// exit-code mapping) which failure class occurred.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
inline bool is_finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

/// Throws Degenerate for the zero vector.
Vec3 normalized(const Vec3& v);

/// Unsigned angle in [0, pi] between two nonzero vectors (atan2 form, accurate
/// near 0 and pi).
double angle_between(const Vec3& a, const Vec3& b);

/// Angle swept from `a` to `b` about `axis`, in (-pi, pi]; positive is
/// counterclockwise when viewed from the tip of `axis`.
double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis);

/// Non-vertical plane z = a*x + b*y + c.
struct Plane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double height_at(double x, double y) const { return a * x + b * y + c; }
  /// Vertical offset of `p` above the plane (positive above).
  double height_above(const Point3& p) const { return p.z - height_at(p.x, p.y); }
  /// Unit normal pointing to +z.
  Vec3 upward_normal() const { return normalized(Vec3{-a, -b, 1.0}); }
  constexpr bool operator==(const Plane&) const = default;
};

struct Tolerances {
  double eps_geom = 1e-9;
  double eps_angle = 1e-9;
  double eps_area = 1e-18;

  /// eps_geom = 1e-9 x bounding-box diameter of `points` (floored at 1e-12
  /// for degenerate sets); eps_area = eps_geom^2.
  static Tolerances for_points(std::span<const Point3> points);
  void validate() const;
};

double bounding_box_diameter(std::span<const Point3> points);

enum class Sign { Neg = -1, Zero = 0, Pos = 1 };

/// Sign of the signed volume of tetrahedron (p0, p1, p2, q), i.e. of
/// dot(cross(p1 - p0, p2 - p0), q - p0). The ZERO band is eps_geom scaled by the
/// magnitude of the two spanning edges.
Sign orient3d(const Point3& p0, const Point3& p1, const Point3& p2, const Point3& q,
              const Tolerances& tol = {});

/// Angle between `n` and +z, in [0, pi].
double normal_angle_to_z(const Vec3& n);

/// Explicit-form plane through a planar polygon's points. Uses Newell's normal
/// so any number of points >= 3 is accepted.
Plane plane_through(std::span<const Point3> face_points, const Tolerances& tol = {});

/// Area of a convex spherical polygon given by unit vertices in cyclic order,
/// computed as the spherical excess.
double spherical_polygon_area(std::span<const Vec3> dirs, const Tolerances& tol = {});

}  // namespace jcap
