// jcap: command-line front end for the cap / extension / limit-angle pipeline.
//
//   jcap gen --n 50 --seed 1 > poly.off
//   jcap check poly.off --phi 60
//   jcap check --fuzz 1000 --seed 1
//   jcap export poly.off --format obj --out ext.obj
//
// Reports go to stdout as JSON, diagnostics to stderr. Exit status: 0 ok,
// 1 degenerate or unreadable input, 2 invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jcap/pipeline.hpp"

namespace {

using namespace jcap;

struct Flags {
  std::string input;
  double phi = 90.0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<double> ray_length;
  std::optional<double> tol;
  std::size_t fuzz = 0;
  std::size_t n = 50;
  std::string distribution = "sphere-cap";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeometryError(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

// Input polyhedron: an OFF file, or the fuzz instance for --seed.
Polyhedron load_input(const Flags& f, PipelineOptions& o, const CLI::Option* phi_opt) {
  if (!f.input.empty()) return parse_off(read_file(f.input));
  if (!f.seed) throw GeometryError(ErrorCode::InvalidArgument, "give an OFF file or --seed");
  GeneratorConfig cfg = fuzz_config(*f.seed);
  if (phi_opt->count() > 0) cfg.phi_degrees = f.phi;
  o.phi_degrees = cfg.phi_degrees;
  return generate(cfg);
}

double default_ray_length(const PipelineRun& run) { return 2.0 * bounding_box_diameter(run.input.vertices()); }

std::string geometry_text(const Flags& f, const PipelineRun& run, const PipelineOptions& o) {
  if (f.format == "json") return serialize_scene(run.scene(o));
  if (f.format == "obj") {
    if (run.extension && o.stage != Stage::Cap) {
      const double len = f.ray_length.value_or(default_ray_length(run));
      return emit_obj(*run.extension, len, run.limit ? &*run.limit : nullptr);
    }
    if (run.cap) return emit_obj(*run.cap);
    throw GeometryError(ErrorCode::InvalidArgument, "nothing to export");
  }
  if (run.extension && o.stage != Stage::Cap) {
    std::vector<std::vector<std::size_t>> loops;
    for (const auto& face : run.extension->bounded_faces) loops.push_back(face.vertices);
    return emit_off(run.extension->vertices, loops);
  }
  if (run.cap) {
    std::vector<std::vector<std::size_t>> loops;
    for (auto id : run.cap->face_ids) loops.push_back(run.cap->parent.faces()[id].vertices);
    return emit_off(run.cap->parent.vertices(), loops);
  }
  return emit_off(run.input);
}

int run_stage(Stage stage, const Flags& f, const CLI::Option* phi_opt, bool report_to_stdout) {
  PipelineOptions o;
  o.phi_degrees = f.phi;
  o.seed = f.seed;
  o.eps_geom = f.tol;
  o.stage = stage;
  const Polyhedron p = load_input(f, o, phi_opt);
  const PipelineRun run = run_pipeline(p, o);
  for (const auto& d : run.diagnostics) std::cerr << "jcap: " << d << '\n';
  const std::string report = run.report(o).dump(2) + "\n";
  if (report_to_stdout) {
    std::cout << report;
    if (!f.format.empty() && !f.out.empty()) write_output(f.out, geometry_text(f, run, o));
  } else {
    if (run.outcome == Outcome::Ok) write_output(f.out, geometry_text(f, run, o));
    std::cerr << report;
  }
  return exit_code(run.outcome);
}

int run_fuzz_check(const Flags& f) {
  const std::uint64_t first = f.seed.value_or(1);
  const FuzzSummary s = run_fuzz(f.fuzz, first, f.tol);
  for (const auto& msg : s.failures) std::cerr << "jcap: " << msg << '\n';
  std::cout << s.report(first).dump(2) << '\n';
  if (s.violations > 0) return 2;
  return s.degenerate > 0 ? 1 : 0;
}

void add_common(CLI::App* cmd, Flags& f, bool with_input = true) {
  if (with_input) cmd->add_option("input", f.input, "OFF file (omit to use the instance for --seed)");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--tol", f.tol, "Geometric tolerance eps_geom")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output path for --format");
}

CLI::Option* add_phi(CLI::App* cmd, Flags& f) {
  return cmd->add_option("--phi", f.phi, "Cap angle in degrees, in (0, 90]")->check(CLI::Range(0.0, 90.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jagged convex caps, their unbounded extensions and limit angles"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "Generate a random convex polyhedron");
  gen->add_option("--n", f.n, "Number of sampled points (>= 4)")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 24));
  gen->add_option("--distribution", f.distribution, "sphere-cap, paraboloid or ball")
      ->check(CLI::IsMember({"sphere-cap", "paraboloid", "ball"}));
  add_phi(gen, f);
  add_common(gen, f, false);
  gen->add_option("--format", f.format, "off or json")->check(CLI::IsMember({"off", "json"}));

  std::vector<std::pair<CLI::App*, CLI::Option*>> stages;
  const std::pair<const char*, const char*> stage_defs[] = {
      {"cap", "Extract the jagged cap and check it is a disk"},
      {"extend", "Extend the cap to its unbounded polyhedron"},
      {"limit", "Compute the limit angle and curvatures"},
      {"check", "Run every stage and verify the invariants (or fuzz with --fuzz)"},
      {"export", "Write the extension (obj/off) or scene document (json)"},
  };
  for (const auto& [name, help] : stage_defs) {
    auto* cmd = app.add_subcommand(name, help);
    auto* phi = add_phi(cmd, f);
    add_common(cmd, f);
    cmd->add_option("--format", f.format, "off, obj or json")->check(CLI::IsMember({"off", "obj", "json"}));
    cmd->add_option("--ray-length", f.ray_length, "Length of exported rays (default 2x bounding-box diameter)")
        ->check(CLI::PositiveNumber);
    stages.emplace_back(cmd, phi);
  }
  stages[3].first->add_option("--fuzz", f.fuzz, "Number of generated instances, seeds --seed, --seed+1, ...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      GeneratorConfig cfg;
      cfg.n = f.n;
      cfg.seed = f.seed.value_or(1);
      cfg.distribution = distribution_from_string(f.distribution);
      cfg.phi_degrees = f.phi;
      const Polyhedron p = generate(cfg);
      if (f.format == "json") {
        SceneDocument doc;
        doc.polyhedron = p;
        doc.metadata.phi_degrees = cfg.phi_degrees;
        doc.metadata.seed = cfg.seed;
        doc.metadata.tolerances = Tolerances::for_points(p.vertices());
        write_output(f.out, serialize_scene(doc));
      } else {
        write_output(f.out, emit_off(p));
      }
      return 0;
    }
    const Stage kinds[] = {Stage::Cap, Stage::Extend, Stage::Limit, Stage::Check, Stage::Check};
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (!stages[i].first->parsed()) continue;
      if (i == 3 && f.fuzz > 0) return run_fuzz_check(f);
      if (i == 4) {
        Flags g = f;
        if (g.format.empty()) g.format = "obj";
        return run_stage(Stage::Check, g, stages[i].second, false);
      }
      return run_stage(kinds[i], f, stages[i].second, true);
    }
  } catch (const GeometryError& e) {
    std::cerr << "jcap: " << e.what() << '\n';
    return e.code() == ErrorCode::Internal ? 2 : 1;
  }
  return 1;
}
