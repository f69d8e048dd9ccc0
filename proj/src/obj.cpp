#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "jcap/io.hpp"

namespace jcap {
namespace {

void put_vertex(std::ostringstream& os, const Point3& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
  os << buf;
}

}  // namespace

std::string emit_obj(const UnboundedPolyhedron& u, double ray_length, const LimitAngle* limit) {
  if (!(ray_length > 0.0) || !std::isfinite(ray_length)) {
    throw GeometryError(ErrorCode::InvalidArgument, "ray length must be positive and finite");
  }
  std::ostringstream os;
  os << "# rays truncated at length " << ray_length << "\n";
  os << "o extension\n";
  for (const auto& p : u.vertices) put_vertex(os, p);
  // OBJ indices are 1-based and global across objects.
  std::size_t next = u.vertices.size() + 1;
  std::vector<std::size_t> ray_end;
  for (const auto& r : u.rays) {
    put_vertex(os, r.origin_point + r.direction * ray_length);
    ray_end.push_back(next++);
  }
  os << "g bounded\n";
  for (const auto& f : u.bounded_faces) {
    os << 'f';
    for (auto v : f.vertices) os << ' ' << v + 1;
    os << '\n';
  }
  os << "g unbounded\n";
  for (const auto& f : u.unbounded_faces) {
    // Outward order: right ray end, chain backwards, left ray end.
    os << "f " << ray_end[f.right_ray];
    for (auto it = f.chain.rbegin(); it != f.chain.rend(); ++it) os << ' ' << *it + 1;
    os << ' ' << ray_end[f.left_ray] << '\n';
  }
  os << "g rays\n";
  for (std::size_t j = 0; j < u.rays.size(); ++j) os << "l " << u.rays[j].origin + 1 << ' ' << ray_end[j] << '\n';

  if (limit != nullptr) {
    os << "o limit_angle\n";
    const std::size_t apex = next++;
    put_vertex(os, limit->apex);
    std::vector<std::size_t> ends;
    for (const auto& d : limit->directions) {
      put_vertex(os, limit->apex + d * ray_length);
      ends.push_back(next++);
    }
    for (std::size_t j = 0; j < ends.size(); ++j) {
      os << "f " << apex << ' ' << ends[j] << ' ' << ends[(j + 1) % ends.size()] << '\n';
    }
  }
  return os.str();
}

std::string emit_obj(const Cap& c) {
  std::ostringstream os;
  os << "o cap\n";
  std::map<std::size_t, std::size_t> index;
  for (auto v : c.vertex_ids()) {
    put_vertex(os, c.parent.vertices()[v]);
    index.emplace(v, index.size() + 1);
  }
  for (auto f : c.face_ids) {
    os << 'f';
    for (auto v : c.parent.faces()[f].vertices) os << ' ' << index.at(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace jcap
