#include "jcap/io.hpp"

namespace jcap {

using nlohmann::json;

namespace {

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw GeometryError(ErrorCode::Parse, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json(const Plane& p) { return json::array({p.a, p.b, p.c}); }

Plane plane_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw GeometryError(ErrorCode::Parse, "expected a plane [a, b, c]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json points_json(const std::vector<Point3>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

std::vector<Point3> points_from(const json& j) {
  std::vector<Point3> ps;
  for (const auto& e : j) ps.push_back(vec_from(e));
  return ps;
}

json face_json(const Face& f) {
  return {{"vertices", f.vertices}, {"normal", to_json(f.normal)}, {"offset", f.offset}};
}

Face face_from(const json& j) {
  return {j.at("vertices").get<std::vector<std::size_t>>(), vec_from(j.at("normal")), j.at("offset").get<double>()};
}

json extension_json(const UnboundedPolyhedron& u) {
  json j;
  j["vertices"] = points_json(u.vertices);
  json cv = json::array();
  for (const auto& c : u.cap_vertex) cv.push_back(c ? json(*c) : json(nullptr));
  j["cap_vertex"] = cv;
  j["bounded_faces"] = json::array();
  for (const auto& f : u.bounded_faces) j["bounded_faces"].push_back(face_json(f));
  j["boundary"] = u.boundary;
  j["new_vertices"] = u.new_vertices;
  j["rays"] = json::array();
  for (const auto& r : u.rays) {
    j["rays"].push_back({{"origin", r.origin}, {"origin_point", to_json(r.origin_point)},
                         {"direction", to_json(r.direction)}});
  }
  j["unbounded_faces"] = json::array();
  for (const auto& f : u.unbounded_faces) {
    j["unbounded_faces"].push_back({{"plane", to_json(f.plane)},
                                    {"normal", to_json(f.normal)},
                                    {"chain", f.chain},
                                    {"left_ray", f.left_ray},
                                    {"right_ray", f.right_ray}});
  }
  return j;
}

UnboundedPolyhedron extension_from(const json& j) {
  UnboundedPolyhedron u;
  u.vertices = points_from(j.at("vertices"));
  for (const auto& c : j.at("cap_vertex")) {
    u.cap_vertex.push_back(c.is_null() ? std::nullopt : std::optional<std::size_t>(c.get<std::size_t>()));
  }
  for (const auto& f : j.at("bounded_faces")) u.bounded_faces.push_back(face_from(f));
  u.boundary = j.at("boundary").get<std::vector<std::size_t>>();
  u.new_vertices = j.at("new_vertices").get<std::vector<std::size_t>>();
  for (const auto& r : j.at("rays")) {
    u.rays.push_back(Ray{r.at("origin").get<std::size_t>(), vec_from(r.at("origin_point")),
                         vec_from(r.at("direction"))});
  }
  for (const auto& f : j.at("unbounded_faces")) {
    u.unbounded_faces.push_back(UnboundedFace{plane_from(f.at("plane")), vec_from(f.at("normal")),
                                              f.at("chain").get<std::vector<std::size_t>>(),
                                              f.at("left_ray").get<std::size_t>(),
                                              f.at("right_ray").get<std::size_t>()});
  }
  return u;
}

}  // namespace

bool SceneMetadata::operator==(const SceneMetadata& o) const {
  return phi_degrees == o.phi_degrees && seed == o.seed && tolerances.eps_geom == o.tolerances.eps_geom &&
         tolerances.eps_angle == o.tolerances.eps_angle && tolerances.eps_area == o.tolerances.eps_area;
}

CapRecord cap_record(const Cap& c) { return {c.face_ids, c.boundary, c.boundary_faces}; }

json scene_to_json(const SceneDocument& doc) {
  json j;
  j["schema"] = 1;
  json meta;
  meta["phi_degrees"] = doc.metadata.phi_degrees ? json(*doc.metadata.phi_degrees) : json(nullptr);
  meta["seed"] = doc.metadata.seed ? json(*doc.metadata.seed) : json(nullptr);
  meta["tolerances"] = {{"eps_geom", doc.metadata.tolerances.eps_geom},
                        {"eps_angle", doc.metadata.tolerances.eps_angle},
                        {"eps_area", doc.metadata.tolerances.eps_area}};
  // Counts are informational; they are recomputed rather than read back.
  json counts;
  if (doc.polyhedron) {
    counts["vertices"] = doc.polyhedron->vertex_count();
    counts["faces"] = doc.polyhedron->face_count();
  }
  if (doc.cap) counts["cap_faces"] = doc.cap->face_ids.size();
  if (doc.extension) counts["rays"] = doc.extension->rays.size();
  meta["counts"] = counts.is_null() ? json::object() : counts;
  j["metadata"] = meta;

  if (doc.polyhedron) {
    json faces = json::array();
    for (const auto& f : doc.polyhedron->faces()) faces.push_back(f.vertices);
    j["polyhedron"] = {{"vertices", points_json(doc.polyhedron->vertices())}, {"faces", faces}};
  }
  if (doc.cap) {
    j["cap"] = {{"face_ids", doc.cap->face_ids},
                {"boundary", doc.cap->boundary},
                {"boundary_faces", doc.cap->boundary_faces}};
  }
  if (doc.extension) j["extension"] = extension_json(*doc.extension);
  if (doc.limit_angle) {
    json dirs = json::array();
    for (const auto& d : doc.limit_angle->directions) dirs.push_back(to_json(d));
    j["limit_angle"] = {{"apex", to_json(doc.limit_angle->apex)}, {"directions", dirs}};
  }
  return j;
}

SceneDocument scene_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw GeometryError(ErrorCode::Parse, "unsupported scene schema");
    SceneDocument doc;
    const json& meta = j.at("metadata");
    if (!meta.at("phi_degrees").is_null()) doc.metadata.phi_degrees = meta["phi_degrees"].get<double>();
    if (!meta.at("seed").is_null()) doc.metadata.seed = meta["seed"].get<std::uint64_t>();
    const json& t = meta.at("tolerances");
    doc.metadata.tolerances = {t.at("eps_geom").get<double>(), t.at("eps_angle").get<double>(),
                               t.at("eps_area").get<double>()};
    if (j.contains("polyhedron")) {
      doc.polyhedron = Polyhedron(points_from(j["polyhedron"].at("vertices")),
                                  j["polyhedron"].at("faces").get<std::vector<std::vector<std::size_t>>>());
    }
    if (j.contains("cap")) {
      doc.cap = CapRecord{j["cap"].at("face_ids").get<std::vector<std::size_t>>(),
                          j["cap"].at("boundary").get<std::vector<std::size_t>>(),
                          j["cap"].at("boundary_faces").get<std::vector<std::size_t>>()};
    }
    if (j.contains("extension")) doc.extension = extension_from(j["extension"]);
    if (j.contains("limit_angle")) {
      LimitAngle v;
      v.apex = vec_from(j["limit_angle"].at("apex"));
      v.directions = points_from(j["limit_angle"].at("directions"));
      doc.limit_angle = v;
    }
    return doc;
  } catch (const json::exception& e) {
    throw GeometryError(ErrorCode::Parse, std::string("malformed scene document: ") + e.what());
  }
}

std::string serialize_scene(const SceneDocument& doc) { return scene_to_json(doc).dump(2) + "\n"; }

SceneDocument parse_scene(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GeometryError(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  return scene_from_json(j);
}

}  // namespace jcap
