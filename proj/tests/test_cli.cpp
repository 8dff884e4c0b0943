#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "uwdc/commands.hpp"

using namespace uwdc;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(UWDC_EXAMPLES_DIR) + "/" + name; }

struct Run {
  int code = 0;
  std::string out, err;
};

template <typename F>
Run capture(F&& f) {
  std::ostringstream out, err;
  Run r;
  r.code = f(out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Runs the built binary; stderr is discarded.
Run shell(const std::string& args) {
  const std::string cmd = std::string(UWDC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run measure(const std::string& file, std::string k = "all") {
  return capture([&](auto& o, auto& e) { return cmd_measure({data(file), k, std::nullopt}, o, e); });
}

Run classify(const std::string& point, const std::string& dir, double r, double u) {
  return capture([&](auto& o, auto& e) { return cmd_classify({data("disk.json"), point, dir, r, u}, o, e); });
}

}  // namespace

TEST_CASE("measure") {
  const Run sq = measure("square.json");
  CHECK(sq.code == kExitOk);
  CHECK(sq.out == "scene,k,window,value\nsquare,0,all,1\nsquare,1,all,2\nsquare,2,all,1\n");

  const Run frame = measure("frame.json", "0");
  CHECK(frame.code == kExitOk);
  CHECK(frame.out == "scene,k,window,value\nframe,0,all,0\n");

  const Run two = measure("two_squares.json", "2");
  CHECK(two.out == "scene,k,window,value\ntwo_squares,2,all,1.75\n");

  const Run windowed =
      capture([&](auto& o, auto& e) { return cmd_measure({data("square.json"), "2", "-1,-1,0.5,2"}, o, e); });
  CHECK(windowed.code == kExitOk);
  CHECK(windowed.out.find(",0.5\n") != std::string::npos);

  const Run touching = measure("touching.json");
  CHECK(touching.code == kExitDegenerate);
  CHECK(touching.err.find("'a'") != std::string::npos);
  CHECK(touching.err.find("'b'") != std::string::npos);

  CHECK(measure("malformed.json").code == kExitSchema);
  CHECK(measure("missing.json").code == kExitSchema);
  CHECK(measure("square.json", "3").code == kExitSchema);
}

TEST_CASE("check-uwdc") {
  const Run sq = capture([](auto& o, auto& e) { return cmd_check_uwdc(data("two_squares.json"), o, e); });
  CHECK(sq.code == kExitOk);
  const json j = json::parse(sq.out);
  CHECK(j["status"] == "certified");
  CHECK(j["complement_count"] == 1);
  CHECK(j["failures"].empty());

  const Run comb = capture([](auto& o, auto& e) { return cmd_check_uwdc(data("comb5.json"), o, e); });
  CHECK(comb.code == kExitOk);
  CHECK(json::parse(comb.out)["complement_count"] == 6);

  const Run mixed = capture([](auto& o, auto& e) { return cmd_check_uwdc(data("mixed.json"), o, e); });
  CHECK(mixed.code == kExitOk);
  CHECK(json::parse(mixed.out)["isolated_points"].size() == 1);
}

TEST_CASE("classify on the unit disk") {
  const Run outward = classify("0,1", "0,1", 0.1, 0.5);
  CHECK(outward.code == kExitOk);
  CHECK(json::parse(outward.out)["kind"] == "ST1");
  CHECK(json::parse(classify("0,1", "0,-1", 0.1, 0.5).out)["kind"] == "ST2");
  const json tangent = json::parse(classify("0,1", "1,0", 0.1, 0.5).out);
  CHECK(tangent["kind"] == "ST3");
  CHECK(tangent["witnesses"].size() == 1);

  CHECK(classify("0,1", "zero,1", 0.1, 0.5).code == kExitSchema);
  CHECK(classify("0,1", "0,1,2", 0.1, 0.5).code == kExitSchema);
  CHECK(classify("0,1", "0,1", -0.1, 0.5).code == kExitSchema);
}

TEST_CASE("slice") {
  const Run r = capture([](auto& o, auto& e) { return cmd_slice({data("two_squares.json"), 100, 5}, o, e); });
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == 100);
  CHECK(j["failed"] == 0);
  const Run again = capture([](auto& o, auto& e) { return cmd_slice({data("two_squares.json"), 100, 5}, o, e); });
  CHECK(again.out == r.out);
  CHECK(capture([](auto& o, auto& e) { return cmd_slice({data("touching.json"), 10, 5}, o, e); }).code ==
        kExitDegenerate);
}

TEST_CASE("kinematic report") {
  const KinematicArgs a{data("square.json"), data("square.json"), 2, 5000, 9, 0.0, 1};
  const Run r = capture([&](auto& o, auto& e) { return cmd_kinematic(a, o, e); });
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["k"] == 2);
  CHECK(j["rhs"].get<double>() == doctest::Approx(1.0));
  CHECK(j["n"] == 5000);
  CHECK(j["seed"] == 9);
  CHECK(j["verdict"] == "pass");
  CHECK(j["gammas"].contains("2,2,2"));
  const Run again = capture([&](auto& o, auto& e) { return cmd_kinematic(a, o, e); });
  CHECK(again.out == r.out);
}

TEST_CASE("turn") {
  const Run semi = capture([](auto& o, auto& e) { return cmd_turn(data("semicircle.json"), o, e); });
  CHECK(semi.code == kExitOk);
  const json j = json::parse(semi.out);
  REQUIRE(j["curves"].size() == 1);
  CHECK(std::abs(j["curves"][0]["turn"].get<double>() - 3.141592653589793) <= 0.01);

  const Run sq = capture([](auto& o, auto& e) { return cmd_turn(data("square.json"), o, e); });
  const json s = json::parse(sq.out);
  REQUIRE(s["curves"].size() == 1);
  CHECK(s["curves"][0]["turn"].get<double>() == doctest::Approx(2 * 3.141592653589793));
  for (const auto& p : s["curves"][0]["pieces"]) CHECK(p["one_lipschitz"] == true);
  CHECK(s["curves"][0]["pieces"].size() <= 5);
}

TEST_CASE("binary") {
  const Run a = shell("measure " + data("two_squares.json"));
  CHECK(a.code == 0);
  CHECK(a.out == measure("two_squares.json").out);
  CHECK(shell("measure " + data("two_squares.json")).out == a.out);
  CHECK(shell("measure " + data("touching.json")).code == 3);
  CHECK(shell("measure " + data("malformed.json")).code == 2);
  // Random commands refuse to run without an explicit seed.
  CHECK(shell("slice " + data("square.json")).code == 2);
  CHECK(shell("kinematic " + data("square.json") + " " + data("square.json")).code == 2);
  CHECK(shell("slice " + data("square.json") + " --n 20 --seed 3").code == 0);
  CHECK(shell("bogus").code == 2);
  CHECK(shell("check-uwdc " + data("comb5.json")).code == 0);
}
