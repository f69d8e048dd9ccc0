#include <gtest/gtest.h>

#include "jcap/io.hpp"
#include "jcap/limit_angle.hpp"
#include "oracles.hpp"

using namespace jcap;

namespace {

UnboundedPolyhedron pyramid_extension() {
  const Cap c = extract_cap(convex_hull(oracle::pyramid_points()), CapSpec::from_degrees(90));
  return std::get<UnboundedPolyhedron>(build_extension(c));
}

std::size_t apex_index(const UnboundedPolyhedron& u) {
  for (std::size_t i = 0; i < u.vertices.size(); ++i) {
    if (u.vertices[i] == Point3{0, 0, 1}) return i;
  }
  return u.vertices.size();
}

}  // namespace

TEST(LimitAngle, PyramidApexCurvature) {
  const Polyhedron p = convex_hull(oracle::pyramid_points());
  const FanSurface s = FanSurface::from_polyhedron(p);
  EXPECT_NEAR(vertex_curvature(s, 0), oracle::pyramid_apex_curvature(), 1e-12);
  // Closed surface: total curvature 4 pi.
  double total = 0.0;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) total += vertex_curvature(s, v);
  EXPECT_NEAR(total, 4 * kPi, 1e-12);
}

TEST(LimitAngle, PyramidLimitAngle) {
  const auto u = pyramid_extension();
  const LimitAngle v = build_limit_angle(u);
  EXPECT_EQ(v.apex, (Point3{0, 0, 0}));
  ASSERT_EQ(v.directions.size(), 4u);
  EXPECT_NEAR(limit_apex_curvature(v), oracle::pyramid_apex_curvature(), 1e-12);
}

TEST(LimitAngle, PyramidBaseCornersAreFlat) {
  const auto u = pyramid_extension();
  const FanSurface s = FanSurface::from_unbounded(u);
  for (std::size_t i = 0; i < u.vertices.size(); ++i) {
    if (i == apex_index(u)) continue;
    EXPECT_NEAR(vertex_curvature(s, i), 0.0, 1e-12);
    // Each corner fan: two cap faces and two unbounded faces.
    EXPECT_EQ(s.fan(i).size(), 4u);
  }
}

TEST(LimitAngle, PyramidIdentity) {
  const auto u = pyramid_extension();
  const CurvatureReport r = verify_curvature_identity(u, build_limit_angle(u));
  EXPECT_NEAR(r.total_extension, oracle::pyramid_apex_curvature(), 1e-12);
  EXPECT_NEAR(r.total_cap, oracle::pyramid_apex_curvature(), 1e-12);
  EXPECT_LT(r.identity_gap, 1e-12);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_TRUE(r.bound_holds);
  EXPECT_EQ(r.strictly_convex_vertices, 1u);
  EXPECT_LT(r.spherical_image_gap, 1e-12);
}

TEST(LimitAngle, PyramidApexSphericalImage) {
  const auto u = pyramid_extension();
  const FanSurface s = FanSurface::from_unbounded(u);
  EXPECT_NEAR(spherical_image_curvature(s, apex_index(u)), oracle::pyramid_apex_curvature(), 1e-12);
  // Flat base corners have a degenerate (arc-shaped) normal image.
  EXPECT_EQ(spherical_image_curvature(s, (apex_index(u) + 1) % u.vertices.size()), 0.0);
}

TEST(LimitAngle, TranslatingTheApexChangesNothing) {
  const auto u = pyramid_extension();
  const LimitAngle a = build_limit_angle(u);
  const LimitAngle b = build_limit_angle(u, {5, -3, 2});
  EXPECT_EQ(a.directions, b.directions);
  EXPECT_EQ(limit_apex_curvature(a), limit_apex_curvature(b));
}

TEST(LimitAngle, ConeAsPolyhedronHasApexCurvature) {
  const auto u = pyramid_extension();
  const LimitAngle v = build_limit_angle(u, {1, 2, 3});
  const UnboundedPolyhedron cone = cone_as_unbounded(v);
  const FanSurface s = FanSurface::from_unbounded(cone);
  EXPECT_NEAR(vertex_curvature(s, 0), limit_apex_curvature(v), 1e-12);
  EXPECT_NEAR(spherical_image_curvature(s, 0), limit_apex_curvature(v), 1e-12);
}

TEST(LimitAngle, LimitAngleFitsInsideExtension) {
  const auto u = pyramid_extension();
  EXPECT_TRUE(limit_angle_inside(u, build_limit_angle(u, {0, 0, 0.5})));
  EXPECT_FALSE(limit_angle_inside(u, build_limit_angle(u, {0, 0, 2})));
}

TEST(LimitAngle, CapBoundaryFansAreOpen) {
  const Cap c = extract_cap(convex_hull(oracle::pyramid_points()), CapSpec::from_degrees(90));
  const FanSurface s = FanSurface::from_cap(c);
  try {
    s.fan(c.boundary[0]);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryVertex);
  }
  EXPECT_EQ(s.fan(0).size(), 4u);  // apex is interior
}

TEST(LimitAngle, DegenerateCones) {
  LimitAngle two{{0, 0, 0}, {normalized({1, 0, -1}), normalized({-1, 0, -1})}};
  EXPECT_THROW(limit_apex_curvature(two), GeometryError);
  LimitAngle flat{{0, 0, 0}, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}};
  EXPECT_THROW(limit_apex_curvature(flat), GeometryError);
  UnboundedPolyhedron none;
  EXPECT_THROW(build_limit_angle(none), GeometryError);
}

TEST(LimitAngle, IdentityOnGeneratedInstances) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const GeneratorConfig cfg = fuzz_config(seed);
    const Polyhedron p = generate(cfg);
    const Tolerances tol = Tolerances::for_points(p.vertices());
    Cap c;
    try {
      c = extract_cap(p, CapSpec::from_degrees(cfg.phi_degrees), tol);
    } catch (const GeometryError&) {
      continue;
    }
    const Extension e = build_extension(c, tol);
    ASSERT_TRUE(std::holds_alternative<UnboundedPolyhedron>(e));
    const auto& u = std::get<UnboundedPolyhedron>(e);
    const CurvatureReport r = verify_curvature_identity(u, build_limit_angle(u), tol);
    EXPECT_LT(r.identity_gap, 1e-9) << "seed " << seed;
    EXPECT_GT(r.bound_margin, 0.0) << "seed " << seed;
    EXPECT_LT(r.spherical_image_gap, 1e-9) << "seed " << seed;
    // Cap vertices carry at most the total.
    EXPECT_LE(r.total_cap, r.total_extension + 1e-9);
    for (const auto& [v, omega] : r.per_vertex) EXPECT_GT(omega, -1e-9) << "seed " << seed << " vertex " << v;
  }
}
