#include <gtest/gtest.h>

#include <random>

#include "jcap/extend.hpp"
#include "jcap/io.hpp"
#include "oracles.hpp"

using namespace jcap;

namespace {

Cap pyramid_cap() { return extract_cap(convex_hull(oracle::pyramid_points()), CapSpec::from_degrees(90)); }

bool has_plane(const std::vector<Plane>& ps, const Plane& q) {
  return std::any_of(ps.begin(), ps.end(), [&](const Plane& p) {
    return std::abs(p.a - q.a) < 1e-12 && std::abs(p.b - q.b) < 1e-12 && std::abs(p.c - q.c) < 1e-12;
  });
}

}  // namespace

TEST(Extend, DualityRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const Plane p{u(rng), u(rng), u(rng)};
    EXPECT_EQ(dualize_point(dualize_plane(p)), p);
    const Point3 q{u(rng), u(rng), u(rng)};
    EXPECT_EQ(dualize_plane(dualize_point(q)), q);
  }
  EXPECT_EQ(dualize_plane({1, 2, 3}), (Point3{1, 2, -3}));
}

TEST(Extend, PyramidBoundaryPlanes) {
  const auto planes = boundary_face_planes(pyramid_cap());
  ASSERT_EQ(planes.size(), 4u);
  for (const Plane& q : {Plane{-1, 0, 1}, Plane{1, 0, 1}, Plane{0, -1, 1}, Plane{0, 1, 1}}) {
    EXPECT_TRUE(has_plane(planes, q)) << q.a << " " << q.b << " " << q.c;
  }
}

TEST(Extend, PyramidPlanesMeetAtApex) {
  const auto pts = lower_envelope_vertices({{-1, 0, 1}, {1, 0, 1}, {0, -1, 1}, {0, 1, 1}});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(distance(pts[0], {0, 0, 1}), 0.0, 1e-12);
}

TEST(Extend, ThreePlanes) {
  // z = -x, z = x - 2, z = -y meet where x = 1, z = -1, y = 1.
  const auto pts = lower_envelope_vertices({{-1, 0, 0}, {1, 0, -2}, {0, -1, 0}});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(distance(pts[0], {1, 1, -1}), 0.0, 1e-12);
}

TEST(Extend, EnvelopeWithoutVertices) {
  EXPECT_TRUE(lower_envelope_vertices({{1, 0, 0}, {-1, 0, 0}}).empty());
  // Three planes through a common line.
  EXPECT_TRUE(lower_envelope_vertices({{1, 0, 0}, {-1, 0, 0}, {0.5, 0, 0}}).empty());
  // Duplicates are ignored.
  EXPECT_EQ(lower_envelope_vertices({{1, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}}).size(), 1u);
}

TEST(Extend, EnvelopeMatchesTripleEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + rng() % 6;
    std::vector<Plane> planes;
    for (std::size_t i = 0; i < k; ++i) planes.push_back({u(rng), u(rng), u(rng)});
    const auto got = lower_envelope_vertices(planes);
    const auto want = oracle::envelope_vertices(planes, 1e-9);
    EXPECT_TRUE(oracle::same_point_set(got, want, 1e-8)) << "trial " << trial << " got " << got.size() << " want "
                                                         << want.size();
  }
}

TEST(Extend, PyramidExtension) {
  const Cap c = pyramid_cap();
  const Extension e = build_extension(c);
  ASSERT_TRUE(std::holds_alternative<UnboundedPolyhedron>(e));
  const auto& u = std::get<UnboundedPolyhedron>(e);
  EXPECT_TRUE(u.new_vertices.empty());
  EXPECT_EQ(u.bounded_faces.size(), 4u);
  ASSERT_EQ(u.rays.size(), 4u);
  EXPECT_EQ(u.unbounded_faces.size(), 4u);
  const double s = 1.0 / std::sqrt(3.0);
  for (const auto& r : u.rays) {
    EXPECT_NEAR(std::abs(r.direction.x), s, 1e-12);
    EXPECT_NEAR(std::abs(r.direction.y), s, 1e-12);
    EXPECT_NEAR(r.direction.z, -s, 1e-12);
    // Each ray leaves the base corner outward: same signs as the corner.
    EXPECT_GT(r.direction.x * r.origin_point.x, 0.0);
    EXPECT_GT(r.direction.y * r.origin_point.y, 0.0);
  }
  EXPECT_TRUE(validate_extension(c, u, Tolerances{}).empty());
}

TEST(Extend, CubeIsDegenerate) {
  const Cap c = extract_cap(convex_hull(oracle::cube_points()), CapSpec::from_degrees(90));
  const Extension e = build_extension(c);
  ASSERT_TRUE(std::holds_alternative<DegenerateExtension>(e));
  EXPECT_EQ(std::get<DegenerateExtension>(e).planes.size(), 1u);
}

TEST(Extend, ParallelRidgeIsDegenerate) {
  // Triangular prism lying on its side: two roof planes, a line of apexes.
  const std::vector<Point3> pts{{0, -1, 0}, {0, 1, 0}, {0, 0, 1}, {3, -1, 0}, {3, 1, 0}, {3, 0, 1}};
  const Cap c = extract_cap(convex_hull(pts), CapSpec::from_degrees(90));
  EXPECT_TRUE(std::holds_alternative<DegenerateExtension>(build_extension(c)));
}

TEST(Extend, GeneratedExtensionsAreValid) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const GeneratorConfig cfg = fuzz_config(seed);
    const Polyhedron p = generate(cfg);
    const Tolerances tol = Tolerances::for_points(p.vertices());
    Cap c;
    try {
      c = extract_cap(p, CapSpec::from_degrees(cfg.phi_degrees), tol);
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::LemmaViolation) << "seed " << seed;
      continue;
    }
    const Extension e = build_extension(c, tol);
    ASSERT_TRUE(std::holds_alternative<UnboundedPolyhedron>(e)) << "seed " << seed;
    const auto& u = std::get<UnboundedPolyhedron>(e);
    const auto problems = validate_extension(c, u, tol);
    EXPECT_TRUE(problems.empty()) << "seed " << seed << ": " << (problems.empty() ? "" : problems[0]);
    EXPECT_LE(u.unbounded_faces.size(), c.boundary_faces.size());
    EXPECT_EQ(u.rays.size(), u.unbounded_faces.size());
    // Every new vertex lies on or below every cap face plane.
    for (auto v : u.new_vertices) {
      for (auto f : c.face_ids) {
        EXPECT_LE(p.faces()[f].signed_distance(u.vertices[v]), 1e-7) << "seed " << seed;
      }
    }
  }
}
