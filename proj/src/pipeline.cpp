#include "jcap/pipeline.hpp"

#include <variant>

namespace jcap {

using nlohmann::ordered_json;

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Cap: return "cap";
    case Stage::Extend: return "extend";
    case Stage::Limit: return "limit";
    case Stage::Check: return "check";
  }
  return "unknown";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Ok: return 0;
    case Outcome::Degenerate: return 1;
    case Outcome::Violation: return 2;
  }
  return 2;
}

namespace {

void degenerate(PipelineRun& run, const std::string& msg) {
  if (run.outcome == Outcome::Ok) run.outcome = Outcome::Degenerate;
  run.diagnostics.push_back(msg);
}

void violation(PipelineRun& run, const std::string& msg) {
  run.outcome = Outcome::Violation;
  run.diagnostics.push_back(msg);
}

Tolerances tolerances_for(const Polyhedron& p, const PipelineOptions& o) {
  Tolerances tol = Tolerances::for_points(p.vertices());
  if (o.eps_geom) {
    tol.eps_geom = *o.eps_geom;
    tol.eps_area = *o.eps_geom * *o.eps_geom;
  }
  tol.validate();
  return tol;
}

Point3 vertex_centroid(const Polyhedron& p) {
  Point3 c{};
  for (const auto& v : p.vertices()) c += v;
  return c / static_cast<double>(p.vertex_count());
}

void run_stages(PipelineRun& run, const Polyhedron& p, const PipelineOptions& o) {
  const Tolerances& tol = run.tol;
  try {
    run.cap = extract_cap(p, CapSpec::from_degrees(o.phi_degrees), tol);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::LemmaViolation) {
      run.lemma_violation = true;
      violation(run, e.what());
    } else {
      degenerate(run, e.what());
    }
    return;
  }
  run.disk = check_disk_topology(*run.cap);
  if (!run.disk->pass) {
    run.lemma_violation = true;
    for (const auto& d : run.disk->diagnostics) violation(run, "disk check: " + d);
    if (run.disk->diagnostics.empty()) violation(run, "disk check failed");
    return;
  }
  if (o.stage == Stage::Cap) return;

  Extension ext = build_extension(*run.cap, tol);
  if (auto* d = std::get_if<DegenerateExtension>(&ext)) {
    run.degenerate_extension = *d;
    degenerate(run, "DegenerateExtension: " + d->reason);
    return;
  }
  run.extension = std::get<UnboundedPolyhedron>(std::move(ext));
  for (const auto& problem : validate_extension(*run.cap, *run.extension, tol)) violation(run, "extension: " + problem);
  if (run.outcome == Outcome::Violation || o.stage == Stage::Extend) return;

  run.limit = build_limit_angle(*run.extension);
  run.curvature = verify_curvature_identity(*run.extension, *run.limit, tol);
  if (!run.curvature->identity_holds) {
    violation(run, "curvature identity gap " + std::to_string(run.curvature->identity_gap));
  }
  if (!run.curvature->bound_holds) {
    violation(run, "total curvature is not below 2 pi (margin " + std::to_string(run.curvature->bound_margin) + ")");
  }
  // The limit angle moved to a point of the polyhedron must stay inside the
  // extension.
  const LimitAngle inner{vertex_centroid(p), run.limit->directions};
  run.limit_inside = limit_angle_inside(*run.extension, inner, tol);
  if (!run.limit_inside) violation(run, "limit angle placed inside the polyhedron leaves the extension");
}

ordered_json optional_number(bool present, double v) { return present ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

PipelineRun run_pipeline(const Polyhedron& p, const PipelineOptions& o) {
  PipelineRun run;
  run.input = p;
  try {
    CapSpec::from_degrees(o.phi_degrees).validate();
    run.tol = tolerances_for(p, o);
    run_stages(run, p, o);
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::Internal) {
      violation(run, e.what());
    } else {
      degenerate(run, e.what());
    }
  }
  return run;
}

ordered_json PipelineRun::report(const PipelineOptions& o) const {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = to_string(o.stage);
  j["phi_degrees"] = o.phi_degrees;
  j["seed"] = o.seed ? ordered_json(*o.seed) : ordered_json(nullptr);
  j["tolerances"] = {{"eps_geom", tol.eps_geom}, {"eps_angle", tol.eps_angle}, {"eps_area", tol.eps_area}};
  j["input"] = {{"vertices", input.vertex_count()}, {"faces", input.face_count()}, {"edges", input.edge_count()}};
  j["status"] = outcome == Outcome::Ok ? "ok" : (outcome == Outcome::Degenerate ? "degenerate" : "violation");

  j["cap_vertex_count"] = cap ? ordered_json(cap->vertex_ids().size()) : ordered_json(nullptr);
  j["cap_face_count"] = cap ? ordered_json(cap->face_ids.size()) : ordered_json(nullptr);
  j["boundary_length"] = cap ? ordered_json(cap->boundary.size()) : ordered_json(nullptr);
  j["boundary_face_count"] = cap ? ordered_json(cap->boundary_faces.size()) : ordered_json(nullptr);
  j["disk_check"] = disk ? ordered_json{{"pass", disk->pass}, {"chi", disk->chi}} : ordered_json(nullptr);

  j["new_vertex_count"] = extension ? ordered_json(extension->new_vertices.size()) : ordered_json(nullptr);
  j["ray_count"] = extension ? ordered_json(extension->rays.size()) : ordered_json(nullptr);
  j["unbounded_face_count"] = extension ? ordered_json(extension->unbounded_faces.size()) : ordered_json(nullptr);
  j["degenerate_extension"] = degenerate_extension ? ordered_json(degenerate_extension->reason) : ordered_json(nullptr);

  const bool c = curvature.has_value();
  j["total_cap_curvature"] = optional_number(c, c ? curvature->total_cap : 0.0);
  j["total_curvature"] = optional_number(c, c ? curvature->total_extension : 0.0);
  j["limit_apex_curvature"] = optional_number(c, c ? curvature->limit_apex : 0.0);
  j["identity_gap"] = optional_number(c, c ? curvature->identity_gap : 0.0);
  j["bound_margin"] = optional_number(c, c ? curvature->bound_margin : 0.0);
  j["spherical_image_gap"] = optional_number(c, c ? curvature->spherical_image_gap : 0.0);
  j["limit_angle_inside"] = c ? ordered_json(limit_inside) : ordered_json(nullptr);
  j["diagnostics"] = diagnostics;
  return j;
}

SceneDocument PipelineRun::scene(const PipelineOptions& o) const {
  SceneDocument doc;
  doc.polyhedron = input;
  if (cap) doc.cap = cap_record(*cap);
  doc.extension = extension;
  doc.limit_angle = limit;
  doc.metadata.phi_degrees = o.phi_degrees;
  doc.metadata.seed = o.seed;
  doc.metadata.tolerances = tol;
  return doc;
}

FuzzSummary run_fuzz(std::size_t count, std::uint64_t first_seed, std::optional<double> eps_geom) {
  FuzzSummary s;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    const GeneratorConfig cfg = fuzz_config(seed);
    ++s.instances;
    PipelineOptions o;
    o.phi_degrees = cfg.phi_degrees;
    o.eps_geom = eps_geom;
    o.seed = seed;
    PipelineRun run;
    try {
      run = run_pipeline(generate(cfg), o);
    } catch (const GeometryError& e) {
      ++s.degenerate;
      s.failures.push_back("seed " + std::to_string(seed) + ": generator: " + e.what());
      continue;
    }
    if (run.outcome != Outcome::Ok) {
      ++(run.outcome == Outcome::Violation ? s.violations : s.degenerate);
      if (run.lemma_violation) ++s.lemma_violations;
      std::string msg = "seed " + std::to_string(seed) + ":";
      for (const auto& d : run.diagnostics) msg += " " + d;
      s.failures.push_back(msg);
    }
    if (run.disk && run.disk->pass) ++s.disks;
    if (run.extension) {
      const std::size_t unbounded = run.extension->unbounded_faces.size();
      const std::size_t boundary = run.cap->boundary_faces.size();
      if (unbounded < boundary) ++s.strict_fewer_unbounded;
      if (unbounded > boundary) ++s.unbounded_exceeds_boundary;
      if (!run.extension->new_vertices.empty()) ++s.positive_new_vertices;
    }
    if (run.curvature) {
      ++s.curvature_instances;
      s.max_identity_gap = std::max(s.max_identity_gap, run.curvature->identity_gap);
      s.min_bound_margin = std::min(s.min_bound_margin, run.curvature->bound_margin);
      s.max_spherical_image_gap = std::max(s.max_spherical_image_gap, run.curvature->spherical_image_gap);
      s.strictly_convex_vertices += run.curvature->strictly_convex_vertices;
    }
  }
  return s;
}

ordered_json FuzzSummary::report(std::uint64_t first_seed) const {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = "check";
  j["fuzz"] = {{"instances", instances}, {"first_seed", first_seed}};
  j["status"] = violations > 0 ? "violation" : (degenerate > 0 ? "degenerate" : "ok");
  j["degenerate"] = degenerate;
  j["violations"] = violations;
  j["lemma_violations"] = lemma_violations;
  j["disks"] = disks;
  j["curvature_instances"] = curvature_instances;
  j["max_identity_gap"] = max_identity_gap;
  j["min_bound_margin"] = min_bound_margin;
  j["max_spherical_image_gap"] = max_spherical_image_gap;
  j["strictly_convex_vertices"] = strictly_convex_vertices;
  j["unbounded_fewer_than_boundary_faces"] = strict_fewer_unbounded;
  j["unbounded_more_than_boundary_faces"] = unbounded_exceeds_boundary;
  j["positive_new_vertex_instances"] = positive_new_vertices;
  j["failures"] = failures;
  return j;
}

}  // namespace jcap
