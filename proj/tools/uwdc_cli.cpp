// uwdc: curvature measures, cone types and integral-geometry checks for
// planar scenes. See README.md for the scene format.

#include <iostream>

#include <CLI11.hpp>

#include "uwdc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"uwdc - planar UWDC toolkit"};
  app.require_subcommand(1);

  uwdc::MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "curvature measures C0, C1, C2 as CSV");
  m->add_option("scene", measure.scene, "scene file")->required();
  m->add_option("--k", measure.k, "0, 1, 2 or all")->capture_default_str();
  m->add_option("--window", measure.window, "query window x0,y0,x1,y1");

  std::string verdict_scene;
  auto* v = app.add_subcommand("check-uwdc", "UWDC verdict as JSON");
  v->add_option("scene", verdict_scene, "scene file")->required();

  uwdc::ClassifyArgs cls;
  auto* c = app.add_subcommand("classify", "cone type at a boundary point");
  c->add_option("scene", cls.scene, "scene file")->required();
  c->add_option("--point", cls.point, "x,y")->required();
  c->add_option("--dir", cls.direction, "vx,vy (unit)")->required();
  c->add_option("--r", cls.r, "starting scale")->capture_default_str();
  c->add_option("--u", cls.u, "cone slope")->capture_default_str();

  uwdc::SliceArgs slice;
  auto* s = app.add_subcommand("slice", "halfplane slicing identity on random halfplanes");
  s->add_option("scene", slice.scene, "scene file")->required();
  s->add_option("--n", slice.trials, "number of halfplanes")->capture_default_str();
  s->add_option("--seed", slice.seed, "random seed")->required();

  uwdc::KinematicArgs kin;
  auto* k = app.add_subcommand("kinematic", "Monte Carlo kinematic formula check");
  k->add_option("scene_a", kin.scene_a, "fixed scene")->required();
  k->add_option("scene_b", kin.scene_b, "moving scene")->required();
  k->add_option("--k", kin.k, "curvature index")->capture_default_str();
  k->add_option("--samples", kin.samples, "number of motions")->capture_default_str();
  k->add_option("--seed", kin.seed, "random seed")->required();
  k->add_option("--tol", kin.tol, "absolute tolerance floor")->capture_default_str();
  k->add_option("--threads", kin.threads, "worker threads (0 = all cores)")->capture_default_str();

  std::string turn_path;
  auto* t = app.add_subcommand("turn", "turn table and 1-Lipschitz decomposition");
  t->add_option("file", turn_path, "scene or polyline file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : uwdc::kExitSchema;
  }

  if (*m) return uwdc::cmd_measure(measure, std::cout, std::cerr);
  if (*v) return uwdc::cmd_check_uwdc(verdict_scene, std::cout, std::cerr);
  if (*c) return uwdc::cmd_classify(cls, std::cout, std::cerr);
  if (*s) return uwdc::cmd_slice(slice, std::cout, std::cerr);
  if (*k) return uwdc::cmd_kinematic(kin, std::cout, std::cerr);
  return uwdc::cmd_turn(turn_path, std::cout, std::cerr);
}
