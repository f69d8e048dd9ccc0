#include <algorithm>
#include <cmath>
#include <random>

#include "jcap/io.hpp"

namespace jcap {
namespace {

// mt19937_64 is specified bit-for-bit by the standard, but the std
// distributions are not, so uniform doubles are built by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

Point3 sample(Rng& rng, Distribution d) {
  switch (d) {
    case Distribution::SphereCap: {
      const double z = 2.0 * rng.uniform() - 1.0;
      const double t = kTwoPi * rng.uniform();
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      return {r * std::cos(t), r * std::sin(t), z};
    }
    case Distribution::Paraboloid: {
      const double r = std::sqrt(rng.uniform());
      const double t = kTwoPi * rng.uniform();
      return {r * std::cos(t), r * std::sin(t), 1.0 - r * r};
    }
    case Distribution::Ball:
      for (;;) {
        const Point3 p{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        if (dot(p, p) <= 1.0) return p;
      }
  }
  throw GeometryError(ErrorCode::InvalidArgument, "unknown distribution");
}

// Vertical scale that brings every face around the highest vertex within
// `max_tilt` of +z; nullopt when one of those faces does not point up at all.
std::optional<double> flattening(const Polyhedron& p, double max_tilt) {
  const auto& vs = p.vertices();
  std::size_t top = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i].z > vs[top].z) top = i;
  }
  double worst = 0.0;  // largest tan(tilt)
  for (const auto& f : p.faces()) {
    if (std::find(f.vertices.begin(), f.vertices.end(), top) == f.vertices.end()) continue;
    if (f.normal.z <= 1e-6) return std::nullopt;
    worst = std::max(worst, std::hypot(f.normal.x, f.normal.y) / f.normal.z);
  }
  const double limit = std::tan(max_tilt);
  return worst <= limit ? 1.0 : limit / worst;
}

}  // namespace

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::SphereCap: return "sphere-cap";
    case Distribution::Paraboloid: return "paraboloid";
    case Distribution::Ball: return "ball";
  }
  return "unknown";
}

Distribution distribution_from_string(std::string_view name) {
  if (name == "sphere-cap") return Distribution::SphereCap;
  if (name == "paraboloid") return Distribution::Paraboloid;
  if (name == "ball") return Distribution::Ball;
  throw GeometryError(ErrorCode::InvalidArgument, "unknown distribution '" + std::string(name) + "'");
}

void GeneratorConfig::validate() const {
  if (n < 4) throw GeometryError(ErrorCode::InvalidArgument, "generator needs n >= 4");
  if (!(phi_degrees > 0.0 && phi_degrees <= 90.0)) {
    throw GeometryError(ErrorCode::InvalidArgument, "phi must be in (0, 90] degrees");
  }
}

Polyhedron generate(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const double max_tilt = 0.9 * cfg.phi_degrees * kPi / 180.0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Point3> pts;
    pts.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) pts.push_back(sample(rng, cfg.distribution));
    try {
      const Polyhedron hull = convex_hull(pts);
      const auto scale = flattening(hull, max_tilt);
      if (!scale) continue;
      if (*scale == 1.0) return hull;
      std::vector<Point3> flat = hull.vertices();
      for (auto& p : flat) p.z *= *scale;
      return convex_hull(flat);
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::DegenerateHull) throw;
    }
  }
  throw GeometryError(ErrorCode::Internal, "generator failed to draw a usable point set");
}

GeneratorConfig fuzz_config(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n = 10 + static_cast<std::size_t>(rng.bits() % 91);
  cfg.phi_degrees = 90.0 - 80.0 * rng.uniform();
  cfg.distribution = static_cast<Distribution>(rng.bits() % 3);
  return cfg;
}

}  // namespace jcap
