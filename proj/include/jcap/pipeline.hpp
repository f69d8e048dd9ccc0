// End-to-end runs (cap -> extension -> limit angle -> curvature check) and the
// JSON reports the command-line tool prints.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jcap/io.hpp"

namespace jcap {

enum class Stage { Cap, Extend, Limit, Check };

std::string to_string(Stage s);

struct PipelineOptions {
  double phi_degrees = 90.0;
  /// Overrides the eps_geom derived from the input's bounding box.
  std::optional<double> eps_geom;
  std::optional<std::uint64_t> seed;  // recorded in the report only
  Stage stage = Stage::Check;
};

enum class Outcome { Ok, Degenerate, Violation };

/// Exit code for the command-line tool: 0 ok, 1 degenerate input, 2 invariant
/// violation.
int exit_code(Outcome o);

struct PipelineRun {
  Outcome outcome = Outcome::Ok;
  bool lemma_violation = false;
  std::vector<std::string> diagnostics;
  Polyhedron input;
  Tolerances tol;
  std::optional<Cap> cap;
  std::optional<DiskReport> disk;
  std::optional<UnboundedPolyhedron> extension;
  std::optional<DegenerateExtension> degenerate_extension;
  std::optional<LimitAngle> limit;
  std::optional<CurvatureReport> curvature;
  bool limit_inside = true;

  nlohmann::ordered_json report(const PipelineOptions& o) const;
  SceneDocument scene(const PipelineOptions& o) const;
};

/// Runs the stages up to `o.stage`. Never throws for geometric failures:
/// degenerate input and violated invariants are recorded in the outcome and
/// diagnostics. Invariants checked: the boundary is one simple cycle and the
/// cap is a disk, the extension contains the cap and is well formed, total
/// curvature equals the limit-angle curvature and stays below 2 pi, and the
/// limit angle placed inside the polyhedron stays inside the extension.
PipelineRun run_pipeline(const Polyhedron& p, const PipelineOptions& o);

struct FuzzSummary {
  std::size_t instances = 0;
  std::size_t degenerate = 0;
  std::size_t violations = 0;
  std::size_t lemma_violations = 0;
  std::size_t disks = 0;                // caps that passed the disk check
  std::size_t curvature_instances = 0;  // runs that reached the curvature check
  std::size_t strict_fewer_unbounded = 0;  // unbounded faces < boundary faces
  std::size_t positive_new_vertices = 0;
  std::size_t unbounded_exceeds_boundary = 0;
  std::size_t strictly_convex_vertices = 0;
  double max_identity_gap = 0.0;
  double min_bound_margin = kTwoPi;
  double max_spherical_image_gap = 0.0;
  std::vector<std::string> failures;  // "seed N: ..." per failing instance

  nlohmann::ordered_json report(std::uint64_t first_seed) const;
};

/// Instances first_seed, first_seed + 1, ... built by `fuzz_config`.
FuzzSummary run_fuzz(std::size_t count, std::uint64_t first_seed, std::optional<double> eps_geom = {});

}  // namespace jcap
