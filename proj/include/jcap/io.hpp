// File formats (OFF in/out, OBJ export, JSON scene documents) and the random
// instance generator.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "jcap/limit_angle.hpp"

namespace jcap {

// --- OFF -------------------------------------------------------------------

/// Parses an OFF mesh ("OFF", "V F E", V coordinate lines, F face lines) and
/// returns its canonical convex hull after checking the mesh is a closed,
/// consistently oriented convex surface. Errors carry 1-based line numbers.
Polyhedron parse_off(std::string_view text);
std::string emit_off(const Polyhedron& p);
/// Open or closed polygonal surface, e.g. a cap or the bounded part of an
/// extension.
std::string emit_off(const std::vector<Point3>& vertices, const std::vector<std::vector<std::size_t>>& faces);

// --- OBJ -------------------------------------------------------------------

/// Bounded faces as polygons and each ray as a segment of `ray_length`; the
/// limit angle, when given, goes into its own object group.
std::string emit_obj(const UnboundedPolyhedron& u, double ray_length, const LimitAngle* limit = nullptr);
/// Cap faces only.
std::string emit_obj(const Cap& c);

// --- Generator -------------------------------------------------------------

enum class Distribution { SphereCap, Paraboloid, Ball };

std::string to_string(Distribution d);
Distribution distribution_from_string(std::string_view name);

struct GeneratorConfig {
  std::size_t n = 50;
  std::uint64_t seed = 1;
  Distribution distribution = Distribution::SphereCap;
  double phi_degrees = 90.0;

  void validate() const;
};

/// Hull of n sampled points (sphere-cap: on the unit sphere; paraboloid: on
/// z = 1 - x^2 - y^2 over the unit disk; ball: inside the unit ball). Draws
/// are repeated until the hull is three-dimensional. The result is then
/// flattened vertically, if needed, so that every face around the highest
/// vertex is within 0.9 phi of +z. Deterministic for a fixed config.
Polyhedron generate(const GeneratorConfig& cfg);

/// Config for fuzz instance `seed`: n in [10, 100], phi in (10, 90] degrees and
/// a distribution, all drawn from the seed.
GeneratorConfig fuzz_config(std::uint64_t seed);

// --- Scene documents -------------------------------------------------------

struct SceneMetadata {
  std::optional<double> phi_degrees;
  std::optional<std::uint64_t> seed;
  Tolerances tolerances;

  bool operator==(const SceneMetadata& o) const;
};

struct CapRecord {
  std::vector<std::size_t> face_ids;
  std::vector<std::size_t> boundary;
  std::vector<std::size_t> boundary_faces;

  bool operator==(const CapRecord&) const = default;
};

struct SceneDocument {
  std::optional<Polyhedron> polyhedron;
  std::optional<CapRecord> cap;
  std::optional<UnboundedPolyhedron> extension;
  std::optional<LimitAngle> limit_angle;
  SceneMetadata metadata;

  bool operator==(const SceneDocument&) const = default;
};

CapRecord cap_record(const Cap& c);

nlohmann::json scene_to_json(const SceneDocument& doc);
SceneDocument scene_from_json(const nlohmann::json& j);
std::string serialize_scene(const SceneDocument& doc);
SceneDocument parse_scene(std::string_view text);

}  // namespace jcap
