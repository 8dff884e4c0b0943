#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uwdc/error.hpp"
#include "uwdc/scene_io.hpp"

using namespace uwdc;
using namespace testing;
using nlohmann::json;

namespace {

Scene mixed_scene() {
  const DCFun lower = DCFun::from_pl(std::vector<double>{0, 1, 2}, std::vector<double>{0, 0.3, 0});
  return make_scene({make_rect("sq", {0.1, 0.2}, {1.3, 1.7}), make_disk("disk", {3, 1}, 0.75, 1e-3),
                     make_slab("slab", normalized({1, 2}), lower, DCFun::constant(0, 2, 1.0 / 3.0)),
                     make_segment("seg", {-1, -1}, {0.1, -0.7}), make_point("pt", {std::sqrt(2.0), -2})});
}

Errc code_of(const std::string& text) {
  try {
    read_scene(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::out_of_domain;
}

std::string message_of(const std::string& text) {
  try {
    read_scene(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("scene round trip") {
  const Scene s = mixed_scene();
  const Scene back = read_scene(write_scene(s));
  CHECK(back == s);
  // Emitting again is byte-identical.
  CHECK(write_scene(back) == write_scene(s));
  const json j = scene_to_json(s);
  CHECK(j["version"] == kSceneVersion);
  CHECK(j["pieces"].size() == 5);
}

TEST_CASE("property: random scenes round trip exactly") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Piece> pieces;
    pieces.push_back(make_polygon("p", random_convex(rng, {uni(rng, -3, 3), uni(rng, -3, 3)}, uni(rng, 0.1, 2), 9)));
    pieces.push_back(make_disk("d", {uni(rng, -3, 3), uni(rng, -3, 3)}, uni(rng, 0.1, 2), uni(rng, 1e-5, 1e-2)));
    const DCFun lo = random_pl(rng, 0, 1, 4, 0.5);
    pieces.push_back(make_slab("s", unit_from_angle(uni(rng, 0, 2 * kPi)), lo,
                               add(lo, DCFun::constant(0, 1, uni(rng, 0.1, 1)))));
    const Scene s = make_scene(pieces, uni(rng, 1e-12, 1e-8));
    CHECK(read_scene(write_scene(s)) == s);
  }
}

TEST_CASE("slab bounds may be given as plain values") {
  const std::string text = R"({
    "version": "uwdc-scene/1", "tau": 1e-9,
    "pieces": [{"name": "s", "type": "slab", "direction": [0, 1],
                "lower": {"xs": [0, 1, 2], "ys": [0, 0.5, 0]},
                "upper": {"xs": [0, 2], "ys": [1, 1]}}]})";
  const Scene s = read_scene(text);
  REQUIRE(s.pieces.size() == 1);
  const auto& slab = std::get<SlabShape>(s.pieces[0].shape);
  CHECK(slab.lower(1.0) == doctest::Approx(0.5));
  CHECK(slab.upper(0.5) == doctest::Approx(1.0));
  // Without an explicit window one is derived with a margin.
  CHECK(s.window.lo.x < 0.0);
  CHECK(s.window.hi.y > 1.0);
}

TEST_CASE("schema errors name the offending field") {
  CHECK(code_of("not json") == Errc::schema);
  CHECK(code_of(R"({"version": "uwdc-scene/2", "pieces": []})") == Errc::schema);
  CHECK(code_of(R"({"version": "uwdc-scene/1", "pieces": []})") == Errc::schema);
  CHECK(message_of(R"({"version": "uwdc-scene/1", "pieces": [{"name": "d", "type": "disk", "center": [0, 0],
                       "radius": "one"}]})")
            .find("pieces[0].radius") != std::string::npos);
  CHECK(message_of(R"({"version": "uwdc-scene/1", "pieces": [{"name": "x", "type": "blob"}]})")
            .find("pieces[0].type") != std::string::npos);
  CHECK(message_of(R"({"version": "uwdc-scene/1", "pieces": [
                       {"name": "a", "type": "point", "p": [0, 0]},
                       {"name": "a", "type": "point", "p": [1, 0]}]})")
            .find("duplicate") != std::string::npos);
  // Non-convex polygon and a negative radius are rejected by the piece constructors.
  CHECK(code_of(R"({"version": "uwdc-scene/1", "pieces": [{"name": "p", "type": "polygon",
                    "vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]}]})") == Errc::schema);
  CHECK(code_of(R"({"version": "uwdc-scene/1", "pieces": [{"name": "d", "type": "disk", "center": [0, 0],
                    "radius": -1}]})") == Errc::schema);
  CHECK(code_of(R"({"version": "uwdc-scene/1", "pieces": [{"name": "p", "type": "point", "p": [0, null]}]})") ==
        Errc::schema);
}

TEST_CASE("polyline documents") {
  const Polyline p{{{0, 0}, {1, 0.5}, {2, 0}}, false};
  const json j = polyline_to_json(p);
  CHECK(is_polyline_document(j));
  CHECK_FALSE(is_polyline_document(scene_to_json(mixed_scene())));
  const Polyline back = polyline_from_json(j);
  CHECK(back.vertices == p.vertices);
  CHECK(back.closed == p.closed);
  CHECK_THROWS_AS(polyline_from_json(json{{"version", kPolylineVersion}, {"vertices", json::array()}}), Error);
}

TEST_CASE("load_scene reports unreadable files") {
  try {
    load_scene("/nonexistent/scene.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema);
  }
}
