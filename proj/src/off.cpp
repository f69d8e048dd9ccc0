#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "jcap/io.hpp"

namespace jcap {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw GeometryError(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

double to_double(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    fail(line, "expected a finite number, got '" + tok + "'");
  }
  return value;
}

long long to_integer(const std::string& tok, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected an integer, got '" + tok + "'");
  return value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Polyhedron parse_off(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "OFF") {
    fail(lines.empty() ? 1 : lines[0].number, "missing OFF header");
  }
  // Counts may share the header line ("OFF 8 6 12").
  std::vector<std::string> counts(lines[0].tokens.begin() + 1, lines[0].tokens.end());
  std::size_t cursor = 1;
  std::size_t counts_line = lines[0].number;
  if (counts.empty()) {
    if (lines.size() < 2) fail(lines[0].number + 1, "missing counts line");
    counts = lines[1].tokens;
    counts_line = lines[1].number;
    cursor = 2;
  }
  if (counts.size() != 3) fail(counts_line, "counts line must read 'V F E'");
  const long long nv = to_integer(counts[0], counts_line);
  const long long nf = to_integer(counts[1], counts_line);
  to_integer(counts[2], counts_line);
  if (nv < 0 || nf < 0) fail(counts_line, "counts must be non-negative");
  if (lines.size() < cursor + static_cast<std::size_t>(nv + nf)) {
    fail(lines.back().number, "file ends before all vertices and faces are read");
  }

  std::vector<Point3> verts;
  for (long long i = 0; i < nv; ++i) {
    const Line& l = lines[cursor++];
    if (l.tokens.size() != 3) fail(l.number, "vertex line must have 3 coordinates");
    verts.push_back({to_double(l.tokens[0], l.number), to_double(l.tokens[1], l.number),
                     to_double(l.tokens[2], l.number)});
  }
  // Flat or too-small input is reported as a hull failure before the faces
  // are looked at.
  const Tolerances tol = Tolerances::for_points(verts);
  Polyhedron hull = convex_hull(verts, tol);

  std::vector<std::vector<std::size_t>> faces;
  std::vector<std::size_t> face_lines;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> directed;
  for (long long f = 0; f < nf; ++f) {
    const Line& l = lines[cursor++];
    const long long k = to_integer(l.tokens[0], l.number);
    if (k < 3) fail(l.number, "face needs at least 3 vertices");
    // Trailing tokens beyond k indices (e.g. colours) are allowed.
    if (static_cast<long long>(l.tokens.size()) < k + 1) fail(l.number, "face lists fewer indices than declared");
    std::vector<std::size_t> loop;
    for (long long i = 0; i < k; ++i) {
      const long long idx = to_integer(l.tokens[static_cast<std::size_t>(i + 1)], l.number);
      if (idx < 0 || idx >= nv) fail(l.number, "vertex index " + std::to_string(idx) + " out of range");
      loop.push_back(static_cast<std::size_t>(idx));
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::pair e{loop[i], loop[(i + 1) % loop.size()]};
      if (e.first == e.second) fail(l.number, "face repeats a vertex");
      if (!directed.emplace(e, l.number).second) {
        fail(l.number, "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                           " is used twice in the same direction (non-manifold or inconsistent orientation)");
      }
    }
    faces.push_back(std::move(loop));
    face_lines.push_back(l.number);
  }
  for (const auto& [e, line] : directed) {
    if (!directed.count({e.second, e.first})) {
      fail(line, "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " has only one face");
    }
  }

  // Convexity: with outward faces every vertex is on or below every face plane.
  // A mesh wound inward is accepted when it is convex with all faces reversed.
  int orientation = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::vector<Point3> pts;
    for (auto v : faces[f]) pts.push_back(verts[v]);
    Vec3 n{};
    for (std::size_t i = 0; i < pts.size(); ++i) n += cross(pts[i], pts[(i + 1) % pts.size()]);
    if (norm(n) <= tol.eps_geom * tol.eps_geom) fail(face_lines[f], "face is degenerate");
    n = normalized(n);
    const double off = dot(n, pts[0]);
    for (const auto& p : pts) {
      if (std::abs(dot(n, p) - off) > tol.eps_geom) fail(face_lines[f], "face is not planar");
    }
    double above = 0.0;
    double below = 0.0;
    for (const auto& p : verts) {
      above = std::max(above, dot(n, p) - off);
      below = std::max(below, off - dot(n, p));
    }
    const int side = above <= tol.eps_geom ? 1 : (below <= tol.eps_geom ? -1 : 0);
    if (side == 0 || (orientation != 0 && side != orientation)) {
      fail(face_lines[f], "mesh is not convex (vertices on both sides of this face)");
    }
    orientation = side;
  }
  if (hull.vertex_count() != verts.size()) {
    fail(counts_line, "mesh has vertices that are not corners of its convex hull");
  }
  return hull;
}

std::string emit_off(const std::vector<Point3>& vertices, const std::vector<std::vector<std::size_t>>& faces) {
  std::set<EdgeKey> edges;
  for (const auto& loop : faces) {
    for (std::size_t i = 0; i < loop.size(); ++i) edges.insert(edge_key(loop[i], loop[(i + 1) % loop.size()]));
  }
  std::ostringstream os;
  os << "OFF\n" << vertices.size() << ' ' << faces.size() << ' ' << edges.size() << '\n';
  for (const auto& p : vertices) {
    os << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z) << '\n';
  }
  for (const auto& loop : faces) {
    os << loop.size();
    for (auto v : loop) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::string emit_off(const Polyhedron& p) {
  std::vector<std::vector<std::size_t>> loops;
  for (const auto& f : p.faces()) loops.push_back(f.vertices);
  return emit_off(p.vertices(), loops);
}

}  // namespace jcap
