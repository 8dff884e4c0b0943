#pragma once

// Batch commands behind the CLI. Each returns the process exit code:
// 0 ok / certified, 1 refuted or failed check, 2 bad input, 3 degenerate
// contact, 4 inconclusive.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace uwdc {

enum ExitCode : int { kExitOk = 0, kExitRefuted = 1, kExitSchema = 2, kExitDegenerate = 3, kExitInconclusive = 4 };

struct MeasureArgs {
  std::string scene;
  std::string k = "all";              ///< 0, 1, 2 or all
  std::optional<std::string> window;  ///< "x0,y0,x1,y1"
};
int cmd_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err);

int cmd_check_uwdc(const std::string& scene, std::ostream& out, std::ostream& err);

struct ClassifyArgs {
  std::string scene;
  std::string point;      ///< "x,y"
  std::string direction;  ///< "vx,vy"
  double r = 0.1;
  double u = 0.5;
};
int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err);

struct SliceArgs {
  std::string scene;
  int trials = 100;
  std::uint64_t seed = 0;
};
int cmd_slice(const SliceArgs& a, std::ostream& out, std::ostream& err);

struct KinematicArgs {
  std::string scene_a;
  std::string scene_b;
  int k = 0;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  double tol = 0.0;
  unsigned threads = 0;
};
int cmd_kinematic(const KinematicArgs& a, std::ostream& out, std::ostream& err);

int cmd_turn(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace uwdc
