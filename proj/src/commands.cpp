#include "uwdc/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "uwdc/classify.hpp"
#include "uwdc/curvature.hpp"
#include "uwdc/error.hpp"
#include "uwdc/kinematic.hpp"
#include "uwdc/scene_io.hpp"

namespace uwdc {

using nlohmann::ordered_json;

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::degenerate_contact ? kExitDegenerate : kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw Error(Errc::schema, std::string(what) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.size() != count)
    throw Error(Errc::schema, std::string(what) + ": expected " + std::to_string(count) + " comma-separated numbers");
  return out;
}

ordered_json pt(Vec2 p) { return ordered_json::array({p.x, p.y}); }

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

int cmd_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(a.scene);
    std::vector<int> ks;
    if (a.k == "all") ks = {0, 1, 2};
    else if (a.k == "0" || a.k == "1" || a.k == "2") ks = {a.k[0] - '0'};
    else throw Error(Errc::schema, "--k must be 0, 1, 2 or all");
    std::optional<Rect> window;
    if (a.window) {
      const auto w = parse_list(*a.window, 4, "--window");
      window = Rect{{w[0], w[1]}, {w[2], w[3]}};
      if (!(w[2] > w[0] && w[3] > w[1])) throw Error(Errc::schema, "--window: need x0 < x1 and y0 < y1");
    }
    out << curvature_csv(stem(a.scene), curvature_scene_table(scene, window), ks);
    return int{kExitOk};
  });
}

int cmd_check_uwdc(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const UWDCVerdict v = uwdc_verdict(load_scene(path));
    ordered_json j;
    j["status"] = to_string(v.status);
    j["complement_count"] = v.complement_count;
    ordered_json graphs = ordered_json::array();
    for (const auto& g : v.boundary_graphs) {
      ordered_json gj;
      gj["vertices"] = g.curve.vertices.size();
      gj["direction"] = pt(g.direction);
      gj["lipschitz"] = g.lipschitz;
      gj["turn"] = g.turn;
      graphs.push_back(gj);
    }
    j["boundary_graphs"] = graphs;
    j["isolated_points"] = v.isolated_points;
    j["points_checked"] = v.points_checked;
    j["failures"] = v.failures;
    out << j.dump(2) << '\n';
    switch (v.status) {
      case VerdictStatus::certified: return int{kExitOk};
      case VerdictStatus::refuted: return int{kExitRefuted};
      case VerdictStatus::inconclusive: break;
    }
    return int{kExitInconclusive};
  });
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(a.scene);
    const auto x = parse_list(a.point, 2, "--point");
    const auto v = parse_list(a.direction, 2, "--dir");
    if (!(a.r > 0.0) || !(a.u > 0.0)) throw Error(Errc::schema, "--r and --u must be positive");
    const ConeType t = classify_point(scene, {x[0], x[1]}, {v[0], v[1]}, a.r, a.u);
    ordered_json j;
    j["kind"] = to_string(t.kind);
    j["apex"] = pt(t.apex);
    j["direction"] = pt(t.direction);
    j["r"] = t.r;
    j["u"] = t.u;
    j["ladder_level"] = t.ladder_level;
    ordered_json ws = ordered_json::array();
    for (const auto& f : t.witnesses) ws.push_back({{"xs", f.breakpoints()}, {"ys", f.values()}});
    j["witnesses"] = ws;
    j["violation"] = t.violation;
    j["detail"] = t.detail;
    out << j.dump(2) << '\n';
    return t.kind == ConeKind::inconclusive ? int{kExitInconclusive} : int{kExitOk};
  });
}

int cmd_slice(const SliceArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(a.scene);
    if (a.trials <= 0) throw Error(Errc::schema, "--n must be positive");
    require_generic(scene);
    const auto verts = union_region(scene).vertices();
    std::mt19937_64 rng(a.seed);
    int passed = 0, failed = 0;
    ordered_json rejected = ordered_json::array();
    ordered_json failures = ordered_json::array();
    for (int i = 0; i < a.trials;) {
      const Vec2 v = unit_from_angle(2.0 * std::numbers::pi * uniform01(rng));
      double lo = INFINITY, hi = -INFINITY;
      for (Vec2 p : verts) {
        lo = std::min(lo, dot(p, v));
        hi = std::max(hi, dot(p, v));
      }
      const double pad = 0.25 * (hi - lo) + 1e-3;
      const double t = lo - pad + (hi - lo + 2.0 * pad) * uniform01(rng);
      try {
        const IdentityReport r = slicing_identity_check(scene, v, t);
        if (r.ok) {
          ++passed;
        } else {
          ++failed;
          failures.push_back({{"v", pt(v)}, {"t", t}, {"lhs", r.lhs}, {"rhs", r.rhs}});
        }
        ++i;
      } catch (const Error& e) {
        if (e.code() != Errc::touching_halfplane) throw;
        err << "rejected touching halfplane v=(" << v.x << ", " << v.y << ") t=" << t << '\n';
        rejected.push_back({{"v", pt(v)}, {"t", t}});
        if (rejected.size() > 1000u * static_cast<std::size_t>(a.trials)) throw;
      }
    }
    ordered_json j;
    j["trials"] = a.trials;
    j["seed"] = a.seed;
    j["passed"] = passed;
    j["failed"] = failed;
    j["rejected"] = rejected;
    j["failures"] = failures;
    out << j.dump(2) << '\n';
    return failed == 0 ? int{kExitOk} : int{kExitRefuted};
  });
}

int cmd_kinematic(const KinematicArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene m = load_scene(a.scene_a);
    const Scene k = load_scene(a.scene_b);
    if (a.k < 0 || a.k > 2) throw Error(Errc::schema, "--k must be 0, 1 or 2");
    KinematicOptions opt;
    opt.samples = a.samples;
    opt.seed = a.seed;
    opt.threads = a.threads;
    const KinematicReport r = kinematic_verify(m, k, a.k, opt, a.tol);
    ordered_json j;
    j["k"] = r.k;
    j["lhs"] = r.lhs;
    j["stderr"] = r.std_error;
    j["rhs"] = r.rhs;
    ordered_json g;
    for (int i = a.k; i <= 2; ++i) g["2," + std::to_string(i) + "," + std::to_string(2 + a.k - i)] = r.gammas(i, 2 + a.k - i);
    j["gammas"] = g;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["rejected"] = r.rejected;
    j["verdict"] = r.pass ? "pass" : "fail";
    out << j.dump(2) << '\n';
    return r.pass ? int{kExitOk} : int{kExitRefuted};
  });
}

int cmd_turn(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Polyline> curves;
    {
      std::ifstream probe(path);
      if (!probe) throw Error(Errc::schema, path + ": cannot open file");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(probe);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::schema, path + ": malformed JSON: " + e.what());
      }
      if (is_polyline_document(doc)) {
        curves.push_back(polyline_from_json(doc));
      } else {
        const PolyRegion u = union_region(scene_from_json(doc));
        for (const auto& poly : u.polygons) {
          curves.push_back({poly.outer, true});
          for (const auto& h : poly.holes) curves.push_back({h, true});
        }
      }
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const Polyline& p = curves[c];
      ordered_json row;
      row["curve"] = c;
      row["closed"] = p.closed;
      row["vertices"] = p.vertices.size();
      row["length"] = p.length();
      row["turn"] = turn(p);
      row["signed_turn"] = signed_turn(p);
      if (p.closed) {
        ordered_json pieces = ordered_json::array();
        for (const auto& g : decompose_one_lipschitz(p)) {
          const auto check = is_lipschitz_graph(g.curve, g.direction, 1.0);
          pieces.push_back({{"vertices", g.curve.vertices.size()},
                            {"direction", pt(g.direction)},
                            {"turn", turn(g.curve)},
                            {"one_lipschitz", check.ok}});
        }
        row["pieces"] = pieces;
      }
      rows.push_back(row);
    }
    out << ordered_json{{"curves", rows}}.dump(2) << '\n';
    return int{kExitOk};
  });
}

}  // namespace uwdc
