#include "uwdc/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uwdc/error.hpp"

namespace uwdc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::schema, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number is not finite");
  return v;
}

Vec2 point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ordered_json pt(Vec2 p) { return ordered_json::array({p.x, p.y}); }

ordered_json fun_to_json(const DCFun& f) {
  ordered_json j;
  j["xs"] = f.breakpoints();
  j["g"] = f.g().values();
  j["h"] = f.h().values();
  return j;
}

// Either the exact pair {xs, g, h} or a plain PL graph {xs, ys}.
DCFun fun_from_json(const json& j, const std::string& where) {
  const auto xs = numbers(field(j, "xs", where), where + ".xs");
  if (j.contains("ys")) {
    const auto ys = numbers(j["ys"], where + ".ys");
    if (ys.size() != xs.size()) fail(where, "xs and ys differ in length");
    return DCFun::from_pl(xs, ys);
  }
  const auto g = numbers(field(j, "g", where), where + ".g");
  const auto h = numbers(field(j, "h", where), where + ".h");
  if (g.size() != xs.size() || h.size() != xs.size()) fail(where, "xs, g and h differ in length");
  return DCFun(ConvexPL(xs, g), ConvexPL(xs, h));
}

ordered_json piece_to_json(const Piece& piece) {
  ordered_json j;
  j["name"] = piece.name;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConvexPolygonShape>) {
          j["type"] = "polygon";
          ordered_json vs = ordered_json::array();
          for (Vec2 v : s.vertices) vs.push_back(pt(v));
          j["vertices"] = vs;
        } else if constexpr (std::is_same_v<S, DiskShape>) {
          j["type"] = "disk";
          j["center"] = pt(s.center);
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, SlabShape>) {
          j["type"] = "slab";
          j["direction"] = pt(s.direction);
          j["lower"] = fun_to_json(s.lower);
          j["upper"] = fun_to_json(s.upper);
        } else if constexpr (std::is_same_v<S, SegmentShape>) {
          j["type"] = "segment";
          j["p"] = pt(s.p);
          j["q"] = pt(s.q);
        } else {
          j["type"] = "point";
          j["p"] = pt(s.p);
        }
      },
      piece.shape);
  j["tol"] = piece.tol;
  return j;
}

Piece piece_from_json(const json& j, const std::string& where) {
  const json& name_j = field(j, "name", where);
  if (!name_j.is_string() || name_j.get<std::string>().empty()) fail(where + ".name", "expected a non-empty string");
  const std::string name = name_j.get<std::string>();
  const json& type_j = field(j, "type", where);
  if (!type_j.is_string()) fail(where + ".type", "expected a string");
  const std::string type = type_j.get<std::string>();
  const double tol = j.contains("tol") ? number(j["tol"], where + ".tol") : kDefaultCurveTol;
  if (!(tol > 0.0)) fail(where + ".tol", "must be positive");
  try {
    Piece piece;
    if (type == "polygon") {
      const json& vs = field(j, "vertices", where);
      if (!vs.is_array()) fail(where + ".vertices", "expected an array");
      Ring ring;
      for (std::size_t i = 0; i < vs.size(); ++i)
        ring.push_back(point(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
      piece = make_polygon(name, std::move(ring));
    } else if (type == "disk") {
      piece = make_disk(name, point(field(j, "center", where), where + ".center"),
                        number(field(j, "radius", where), where + ".radius"), tol);
    } else if (type == "slab") {
      piece = make_slab(name, point(field(j, "direction", where), where + ".direction"),
                        fun_from_json(field(j, "lower", where), where + ".lower"),
                        fun_from_json(field(j, "upper", where), where + ".upper"));
    } else if (type == "segment") {
      piece = make_segment(name, point(field(j, "p", where), where + ".p"), point(field(j, "q", where), where + ".q"));
    } else if (type == "point") {
      piece = make_point(name, point(field(j, "p", where), where + ".p"));
    } else {
      fail(where + ".type", "unknown piece type '" + type + "'");
    }
    piece.tol = tol;
    return piece;
  } catch (const Error& e) {
    if (e.code() == Errc::schema) throw;
    fail(where, e.what());
  }
}

}  // namespace

ordered_json scene_to_json(const Scene& scene) {
  ordered_json j;
  j["version"] = kSceneVersion;
  j["tau"] = scene.tau;
  j["window"] = {{"lo", pt(scene.window.lo)}, {"hi", pt(scene.window.hi)}};
  ordered_json pieces = ordered_json::array();
  for (const auto& p : scene.pieces) pieces.push_back(piece_to_json(p));
  j["pieces"] = pieces;
  return j;
}

Scene scene_from_json(const json& j) {
  const json& version = field(j, "version", "scene");
  if (!version.is_string() || version.get<std::string>() != kSceneVersion)
    fail("scene.version", std::string("expected \"") + kSceneVersion + "\"");
  const json& pieces_j = field(j, "pieces", "scene");
  if (!pieces_j.is_array() || pieces_j.empty()) fail("scene.pieces", "expected a non-empty array");
  std::vector<Piece> pieces;
  std::set<std::string> names;
  for (std::size_t i = 0; i < pieces_j.size(); ++i) {
    Piece p = piece_from_json(pieces_j[i], "scene.pieces[" + std::to_string(i) + "]");
    if (!names.insert(p.name).second) fail("scene.pieces[" + std::to_string(i) + "].name", "duplicate name '" + p.name + "'");
    pieces.push_back(std::move(p));
  }
  double tau = kTau;
  if (j.contains("tau")) {
    tau = number(j["tau"], "scene.tau");
    if (!(tau > 0.0)) fail("scene.tau", "must be positive");
  }
  Scene scene;
  try {
    scene = make_scene(std::move(pieces), tau);
  } catch (const Error& e) {
    fail("scene", e.what());
  }
  if (j.contains("window") && !j["window"].is_null()) {
    const json& w = j["window"];
    Rect r{point(field(w, "lo", "scene.window"), "scene.window.lo"), point(field(w, "hi", "scene.window"), "scene.window.hi")};
    if (!(r.hi.x > r.lo.x && r.hi.y > r.lo.y)) fail("scene.window", "hi must exceed lo");
    scene.window = r;
  }
  return scene;
}

std::string write_scene(const Scene& scene) { return scene_to_json(scene).dump(2) + "\n"; }

namespace {

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(what, std::string("malformed JSON: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Scene read_scene(const std::string& text) { return scene_from_json(parse(text, "scene")); }

Scene load_scene(const std::filesystem::path& path) { return read_scene(slurp(path)); }

ordered_json polyline_to_json(const Polyline& p) {
  ordered_json j;
  j["version"] = kPolylineVersion;
  j["closed"] = p.closed;
  ordered_json vs = ordered_json::array();
  for (Vec2 v : p.vertices) vs.push_back(pt(v));
  j["vertices"] = vs;
  return j;
}

Polyline polyline_from_json(const json& j) {
  const json& version = field(j, "version", "polyline");
  if (!version.is_string() || version.get<std::string>() != kPolylineVersion)
    fail("polyline.version", std::string("expected \"") + kPolylineVersion + "\"");
  Polyline p;
  const json& closed = field(j, "closed", "polyline");
  if (!closed.is_boolean()) fail("polyline.closed", "expected true or false");
  p.closed = closed.get<bool>();
  const json& vs = field(j, "vertices", "polyline");
  if (!vs.is_array() || vs.size() < 2) fail("polyline.vertices", "expected at least two points");
  for (std::size_t i = 0; i < vs.size(); ++i)
    p.vertices.push_back(point(vs[i], "polyline.vertices[" + std::to_string(i) + "]"));
  return p;
}

Polyline load_polyline(const std::filesystem::path& path) {
  return polyline_from_json(parse(slurp(path), "polyline"));
}

bool is_polyline_document(const json& j) {
  return j.is_object() && j.contains("version") && j["version"] == kPolylineVersion;
}

}  // namespace uwdc
