// Slow, independent reference computations used to check the library.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "jcap/geom.hpp"

namespace oracle {

using jcap::Plane;
using jcap::Point3;
using jcap::Vec3;

/// Facets of the hull of `pts` by brute force over all triples: a triple spans
/// a facet plane when every point lies on one side. Each facet is reported as
/// the set of input indices lying on its plane.
inline std::set<std::vector<std::size_t>> hull_facet_supports(const std::vector<Point3>& pts, double eps) {
  std::set<std::vector<std::size_t>> facets;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = jcap::cross(pts[j] - pts[i], pts[k] - pts[i]);
        const double len = jcap::norm(nrm);
        if (len < 1e-12) continue;
        nrm = nrm / len;
        bool pos = false;
        bool neg = false;
        std::vector<std::size_t> on;
        for (std::size_t q = 0; q < n; ++q) {
          const double d = jcap::dot(nrm, pts[q] - pts[i]);
          if (d > eps) pos = true;
          else if (d < -eps) neg = true;
          else on.push_back(q);
        }
        if (!(pos && neg)) facets.insert(on);
      }
    }
  }
  return facets;
}

inline std::optional<Point3> intersect3(const Plane& p, const Plane& q, const Plane& r) {
  // a x + b y - z = -c for each plane; Cramer's rule.
  const std::array<std::array<double, 3>, 3> m{{{p.a, p.b, -1.0}, {q.a, q.b, -1.0}, {r.a, r.b, -1.0}}};
  const std::array<double, 3> rhs{-p.c, -q.c, -r.c};
  auto det = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  if (std::abs(d) < 1e-9) return std::nullopt;
  std::array<double, 3> sol{};
  for (int c = 0; c < 3; ++c) {
    auto mc = m;
    for (int r2 = 0; r2 < 3; ++r2) mc[r2][c] = rhs[r2];
    sol[c] = det(mc) / d;
  }
  return Point3{sol[0], sol[1], sol[2]};
}

/// Vertices of {z <= a_i x + b_i y + c_i} by enumerating plane triples.
inline std::vector<Point3> envelope_vertices(const std::vector<Plane>& planes, double eps) {
  std::vector<Point3> out;
  const std::size_t n = planes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto p = intersect3(planes[i], planes[j], planes[k]);
        if (!p) continue;
        const double tol = eps * std::max(1.0, jcap::norm(*p));
        bool feasible = true;
        for (const auto& pl : planes) {
          if (p->z > pl.height_at(p->x, p->y) + tol) feasible = false;
        }
        if (!feasible) continue;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Point3& q) {
          return jcap::distance(q, *p) <= tol;
        });
        if (!dup) out.push_back(*p);
      }
    }
  }
  return out;
}

/// Solid-angle formula for a spherical triangle (Van Oosterom and Strackee).
inline double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = std::abs(jcap::dot(a, jcap::cross(b, c)));
  const double den = 1.0 + jcap::dot(a, b) + jcap::dot(b, c) + jcap::dot(c, a);
  return 2.0 * std::atan2(num, den);
}

/// Convex spherical polygon area by fanning triangles from the first vertex.
inline double spherical_polygon_area(const std::vector<Vec3>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += spherical_triangle_area(v[0], v[i], v[i + 1]);
  return s;
}

/// True when every point of `a` is within `eps` of some point of `b` and vice
/// versa.
inline bool same_point_set(const std::vector<Point3>& a, const std::vector<Point3>& b, double eps) {
  auto covered = [eps](const std::vector<Point3>& x, const std::vector<Point3>& y) {
    return std::all_of(x.begin(), x.end(), [&](const Point3& p) {
      return std::any_of(y.begin(), y.end(), [&](const Point3& q) {
        return jcap::distance(p, q) <= eps * std::max(1.0, jcap::norm(p));
      });
    });
  };
  return covered(a, b) && covered(b, a);
}

/// Unit square pyramid used throughout: apex (0,0,1), base (+-1,+-1,0).
inline std::vector<Point3> pyramid_points() {
  return {{0, 0, 1}, {1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}};
}

inline std::vector<Point3> cube_points() {
  std::vector<Point3> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  return pts;
}

/// 2 pi - 4 arccos(1/3): the apex curvature of the unit square pyramid, whose
/// apex face angle has cosine (1,1,-1).(-1,1,-1)/3 = 1/3.
inline double pyramid_apex_curvature() { return 2.0 * M_PI - 4.0 * std::acos(1.0 / 3.0); }

}  // namespace oracle
