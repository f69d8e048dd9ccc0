// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
// Usage: jcap_acceptance [path-to-jcap-cli]

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "jcap/pipeline.hpp"
#include "oracles.hpp"

using namespace jcap;

namespace {

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  lines[id] = std::string(pass ? "[PASS] " : "[FAIL] ") + "criterion " + std::to_string(id) + ": " + title + " -- " +
              detail;
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Criteria 1, 2, 3 and 7 share the 1000-instance corpus.
void corpus_criteria() {
  const auto t0 = std::chrono::steady_clock::now();
  const FuzzSummary s = run_fuzz(1000, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string detail = std::to_string(s.disks) + "/1000 caps are disks with one simple boundary cycle, " +
                       std::to_string(s.lemma_violations) + " LemmaViolation, " + fmt(secs) + " s";
  for (const auto& f : s.failures) {
    if (f.find("LemmaViolation") != std::string::npos) detail += "; " + f;
  }
  report(1, s.lemma_violations == 0 && s.disks == 1000 && secs < 30.0, "disk suite on seeds 1-1000", detail);

  const std::size_t other_violations = s.violations - s.lemma_violations;
  report(2,
         s.curvature_instances > 0 && s.max_identity_gap < 1e-9 && s.min_bound_margin > 0.0 && other_violations == 0 &&
             s.curvature_instances + s.lemma_violations == 1000,
         "curvature identity and 2 pi bound",
         std::to_string(s.curvature_instances) + " instances, max gap " + fmt(s.max_identity_gap) +
             ", min margin " + fmt(s.min_bound_margin) + ", " + std::to_string(s.degenerate) + " degenerate");

  report(3, s.curvature_instances > 0 && s.max_spherical_image_gap < 1e-9, "spherical image equals angle defect",
         std::to_string(s.strictly_convex_vertices) + " strictly convex vertices, max gap " +
             fmt(s.max_spherical_image_gap));

  const std::size_t n = s.curvature_instances;
  report(7,
         n > 0 && s.unbounded_exceeds_boundary == 0 && 2 * s.strict_fewer_unbounded > n &&
             2 * s.positive_new_vertices > n,
         "unbounded faces <= boundary faces, usually fewer; new vertices usually appear",
         "unbounded > boundary on " + std::to_string(s.unbounded_exceeds_boundary) + ", strictly fewer on " +
             std::to_string(s.strict_fewer_unbounded) + "/" + std::to_string(n) + ", new vertices on " +
             std::to_string(s.positive_new_vertices) + "/" + std::to_string(n));
}

void envelope_criterion() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatches = 0;
  double worst_round_trip = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + rng() % 6;
    std::vector<Plane> planes;
    for (std::size_t i = 0; i < k; ++i) planes.push_back({u(rng), u(rng), u(rng)});
    const Tolerances tol;
    if (!oracle::same_point_set(lower_envelope_vertices(planes, tol), oracle::envelope_vertices(planes, 1e-9),
                                tol.eps_geom * 10)) {
      ++mismatches;
    }
    for (const auto& p : planes) {
      const Plane back = dualize_point(dualize_plane(p));
      worst_round_trip = std::max({worst_round_trip, std::abs(back.a - p.a), std::abs(back.b - p.b),
                                   std::abs(back.c - p.c)});
    }
  }
  report(4, mismatches == 0 && worst_round_trip <= 1e-12, "envelope vertices match triple enumeration",
         std::to_string(mismatches) + "/200 mismatches, dual round-trip error " + fmt(worst_round_trip));
}

void hull_criterion() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatches = 0;
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 17;
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    const Tolerances tol = Tolerances::for_points(pts);
    const Polyhedron h = convex_hull(pts, tol);
    std::set<std::vector<std::size_t>> got;
    for (const auto& f : h.faces()) {
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(f.signed_distance(pts[i])) <= tol.eps_geom) on.push_back(i);
      }
      got.insert(on);
    }
    ++compared;
    if (got != oracle::hull_facet_supports(pts, tol.eps_geom)) ++mismatches;
  }
  report(5, mismatches == 0 && compared == 200, "hull facets match brute force",
         std::to_string(mismatches) + "/" + std::to_string(compared) + " mismatches");
}

void pyramid_criterion() {
  const PipelineRun run = run_pipeline(convex_hull(oracle::pyramid_points()), {});
  const double want = oracle::pyramid_apex_curvature();
  bool ok = run.outcome == Outcome::Ok && run.cap && run.extension && run.curvature;
  std::string detail;
  if (ok) {
    ok = run.cap->face_ids.size() == 4 && run.extension->new_vertices.empty() && run.extension->rays.size() == 4;
    const double s = 1.0 / std::sqrt(3.0);
    for (const auto& r : run.extension->rays) {
      ok = ok && std::abs(std::abs(r.direction.x) - s) <= 1e-12 && std::abs(std::abs(r.direction.y) - s) <= 1e-12 &&
           std::abs(r.direction.z + s) <= 1e-12;
    }
    const double e1 = std::abs(run.curvature->total_extension - want);
    const double e2 = std::abs(run.curvature->limit_apex - want);
    ok = ok && e1 <= 1e-12 && e2 <= 1e-12;
    detail = "total " + std::to_string(run.curvature->total_extension) + ", limit apex " +
             std::to_string(run.curvature->limit_apex) + ", expected " + std::to_string(want) + " (errors " +
             fmt(e1) + ", " + fmt(e2) + ")";
  } else {
    detail = "pipeline failed";
  }
  report(6, ok, "square pyramid end to end", detail);
}

struct Curvatures {
  bool ok = false;
  double total = 0, total_cap = 0, apex = 0;
  std::vector<double> per_vertex;
};

Curvatures curvatures(const std::vector<Point3>& pts, double phi) {
  Curvatures c;
  PipelineOptions o;
  o.phi_degrees = phi;
  const PipelineRun run = run_pipeline(convex_hull(pts), o);
  if (!run.curvature) return c;
  c.ok = true;
  c.total = run.curvature->total_extension;
  c.total_cap = run.curvature->total_cap;
  c.apex = run.curvature->limit_apex;
  for (const auto& [v, w] : run.curvature->per_vertex) c.per_vertex.push_back(w);
  std::sort(c.per_vertex.begin(), c.per_vertex.end());
  return c;
}

void similarity_criterion() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double worst = 0.0;
  int compared = 0;
  int mismatched_structure = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const GeneratorConfig cfg = fuzz_config(seed);
    const std::vector<Point3> base = generate(cfg).vertices();
    const Curvatures ref = curvatures(base, cfg.phi_degrees);
    if (!ref.ok) continue;
    std::vector<std::vector<Point3>> variants;
    for (double s : {0.5, 3.0}) {
      std::vector<Point3> v;
      for (const auto& p : base) v.push_back(p * s);
      variants.push_back(v);
    }
    for (int r = 0; r < 2; ++r) {
      const double t = angle(rng);
      std::vector<Point3> v;
      for (const auto& p : base) {
        v.push_back({std::cos(t) * p.x - std::sin(t) * p.y, std::sin(t) * p.x + std::cos(t) * p.y, p.z});
      }
      variants.push_back(v);
    }
    for (const auto& v : variants) {
      const Curvatures c = curvatures(v, cfg.phi_degrees);
      ++compared;
      if (!c.ok || c.per_vertex.size() != ref.per_vertex.size()) {
        ++mismatched_structure;
        continue;
      }
      worst = std::max({worst, std::abs(c.total - ref.total), std::abs(c.total_cap - ref.total_cap),
                        std::abs(c.apex - ref.apex)});
      for (std::size_t i = 0; i < c.per_vertex.size(); ++i) {
        worst = std::max(worst, std::abs(c.per_vertex[i] - ref.per_vertex[i]));
      }
    }
  }
  report(8, compared > 0 && mismatched_structure == 0 && worst < 1e-9, "scaling and z-rotation invariance",
         std::to_string(compared) + " transformed runs, " + std::to_string(mismatched_structure) +
             " structural mismatches, max curvature change " + fmt(worst));
}

std::string run_command(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0;) out.append(buf.data(), n);
  return out;
}

void determinism_criterion(const std::string& cli) {
  bool same = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const GeneratorConfig cfg = fuzz_config(seed);
    PipelineOptions o;
    o.phi_degrees = cfg.phi_degrees;
    o.seed = seed;
    same = same && run_pipeline(generate(cfg), o).report(o).dump(2) == run_pipeline(generate(cfg), o).report(o).dump(2);
  }
  std::string detail = "50 library reports identical: " + std::string(same ? "yes" : "no");
  if (!cli.empty()) {
    const std::string cmd = cli + " check --seed 7 2>/dev/null";
    const std::string fuzz = cli + " check --fuzz 25 --seed 3 2>/dev/null";
    const std::string a = run_command(cmd), b = run_command(cmd);
    const std::string c = run_command(fuzz), d = run_command(fuzz);
    const bool cli_same = !a.empty() && a == b && !c.empty() && c == d;
    same = same && cli_same;
    detail += ", repeated CLI runs identical: " + std::string(cli_same ? "yes" : "no");
  }
  report(9, same, "byte-identical reports", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  corpus_criteria();
  envelope_criterion();
  hull_criterion();
  pyramid_criterion();
  similarity_criterion();
  determinism_criterion(cli);
  for (const auto& [id, line] : lines) std::cout << line << '\n';
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
