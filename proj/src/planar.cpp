#include "uwdc/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uwdc/error.hpp"

namespace uwdc {

namespace {

constexpr double kUnitTol = 1e-9;

void require_unit(Vec2 v, const char* what) {
  if (std::abs(norm(v) - 1.0) > kUnitTol) throw Error(Errc::not_unit, what);
}

std::vector<Vec2> edge_directions(const Polyline& p) {
  std::vector<Vec2> dirs;
  dirs.reserve(p.edge_count());
  for (std::size_t i = 0; i < p.edge_count(); ++i) {
    const Segment2 e = p.edge(i);
    const double len = e.length();
    if (len <= 0.0) throw Error(Errc::degenerate_segment, "zero-length edge at vertex " + std::to_string(i));
    dirs.push_back((1.0 / len) * (e.b - e.a));
  }
  return dirs;
}

bool segments_cross(Segment2 s, Segment2 t) {
  const double d1 = cross(s.b - s.a, t.a - s.a);
  const double d2 = cross(s.b - s.a, t.b - s.a);
  const double d3 = cross(t.b - t.a, s.a - t.a);
  const double d4 = cross(t.b - t.a, s.b - t.a);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

Isometry Isometry::inverse() const {
  // p = z + R q  =>  q = R^T p - R^T z, and R^T has first column (vx, -vy).
  const Vec2 vt{v.x, -v.y};
  Isometry inv{{0.0, 0.0}, vt};
  inv.z = -inv.apply_linear(z);
  return inv;
}

Isometry make_isometry(Vec2 z, Vec2 v) {
  require_unit(v, "isometry direction");
  return {z, v};
}

bool Cone::contains(Vec2 p, double tol) const {
  const Vec2 d = p - apex;
  const double x = dot(d, dir);
  const double y = dot(d, perp(dir));
  return x >= -tol && x < r && std::abs(y) <= slope() * x + tol;
}

double angle(Vec2 v, Vec2 w) {
  require_unit(v, "angle: first vector");
  require_unit(w, "angle: second vector");
  return std::acos(std::clamp(dot(v, w), -1.0, 1.0));
}

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i < edge_count(); ++i) total += edge(i).length();
  return total;
}

std::vector<Vec2> Polyline::densified(double step) const {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < edge_count(); ++i) {
    const Segment2 e = edge(i);
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(e.length() / step)));
    for (std::size_t k = 0; k < pieces; ++k) out.push_back(e.a + (static_cast<double>(k) / pieces) * (e.b - e.a));
  }
  if (!closed) out.push_back(vertices.back());
  return out;
}

double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) throw Error(Errc::empty_input, "hausdorff of an empty set");
  const auto directed = [](std::span<const Vec2> from, std::span<const Vec2> to) {
    double worst = 0.0;
    for (Vec2 p : from) {
      double best = INFINITY;
      for (Vec2 q : to) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff(const Polyline& a, const Polyline& b, double resolution) {
  if (a.vertices.empty() || b.vertices.empty()) throw Error(Errc::empty_input, "hausdorff of an empty polyline");
  const auto directed = [resolution](const Polyline& from, const Polyline& to) {
    double worst = 0.0;
    for (Vec2 p : from.densified(resolution)) {
      double best = INFINITY;
      if (to.vertices.size() == 1) best = dist(p, to.vertices.front());
      for (std::size_t i = 0; i < to.edge_count(); ++i) best = std::min(best, dist_to_segment(p, to.edge(i).a, to.edge(i).b));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

LipschitzGraphResult is_lipschitz_graph(const Polyline& p, Vec2 v, double lipschitz, double tol) {
  require_unit(v, "graph direction");
  LipschitzGraphResult out;
  const double factor = lipschitz / std::sqrt(1.0 + lipschitz * lipschitz);
  const auto& pts = p.vertices;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec2 d = pts[i] - pts[j];
      if (std::abs(dot(d, v)) > factor * norm(d) + tol) {
        out.violation = {i, j};
        return out;
      }
    }
  }
  std::vector<std::pair<double, double>> samples;
  samples.reserve(pts.size());
  const Vec2 across = perp_cw(v);
  for (Vec2 q : pts) samples.emplace_back(dot(q, across), dot(q, v));
  std::sort(samples.begin(), samples.end());
  std::vector<double> ts, fs;
  for (const auto& [t, f] : samples) {
    if (!ts.empty() && t <= ts.back()) continue;  // repeated vertex of a closed curve
    ts.push_back(t);
    fs.push_back(f);
  }
  out.ok = true;
  if (ts.size() >= 2) out.function = DCFun::from_pl(ts, fs);
  return out;
}

double turn(const Polyline& p) {
  if (p.vertices.size() < 3 && !p.closed) {
    (void)edge_directions(p);
    return 0.0;
  }
  const auto dirs = edge_directions(p);
  const std::size_t joints = p.closed ? dirs.size() : dirs.size() - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < joints; ++i)
    total += std::acos(std::clamp(dot(dirs[i], dirs[(i + 1) % dirs.size()]), -1.0, 1.0));
  return total;
}

double signed_turn(const Polyline& p) {
  if (p.vertices.size() < 3 && !p.closed) {
    (void)edge_directions(p);
    return 0.0;
  }
  const auto dirs = edge_directions(p);
  const std::size_t joints = p.closed ? dirs.size() : dirs.size() - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < joints; ++i) total += signed_angle(dirs[i], dirs[(i + 1) % dirs.size()]);
  return total;
}

double segment_distance(Segment2 s, Segment2 t) {
  if (segments_cross(s, t)) return 0.0;
  return std::min({dist_to_segment(s.a, t.a, t.b), dist_to_segment(s.b, t.a, t.b), dist_to_segment(t.a, s.a, s.b),
                   dist_to_segment(t.b, s.a, s.b)});
}

bool is_simple(const Polyline& p, double tol) {
  const std::size_t m = p.edge_count();
  for (std::size_t i = 0; i < m; ++i) {
    if (p.edge(i).length() <= tol) return false;
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = j == i + 1 || (p.closed && i == 0 && j == m - 1);
      const Segment2 a = p.edge(i), b = p.edge(j);
      if (adjacent) {
        // Adjacent edges may only share their common vertex: reject fold-backs.
        const Vec2 da = normalized(a.b - a.a), db = normalized(b.b - b.a);
        if (std::abs(cross(da, db)) <= tol && dot(da, db) < 0.0) return false;
        continue;
      }
      if (segment_distance(a, b) <= tol) return false;
    }
  }
  return true;
}

std::vector<GraphPiece> decompose_one_lipschitz(const Polyline& p) {
  if (!p.closed) throw Error(Errc::not_closed, "decomposition needs a closed polyline");
  if (!is_simple(p)) throw Error(Errc::not_simple, "decomposition needs a simple polyline");
  const auto dirs = edge_directions(p);
  const std::size_t m = dirs.size();
  constexpr double kQuarter = std::numbers::pi / 2.0;

  std::vector<GraphPiece> pieces;
  std::size_t first = 0;
  double phi = 0.0, lo = 0.0, hi = 0.0;
  const auto close_piece = [&](std::size_t last) {
    Polyline curve;
    for (std::size_t e = first; e <= last; ++e) curve.vertices.push_back(p.vertices[e]);
    curve.vertices.push_back(p.vertices[(last + 1) % m]);
    const Vec2 normal = perp_cw(dirs[first]);
    pieces.push_back({std::move(curve), normalized(rotate(normal, 0.5 * (lo + hi)))});
  };
  for (std::size_t e = 1; e < m; ++e) {
    const double next = phi + signed_angle(dirs[e - 1], dirs[e]);
    if (std::max(hi, next) - std::min(lo, next) >= kQuarter - 1e-12) {
      close_piece(e - 1);
      first = e;
      phi = lo = hi = 0.0;
      continue;
    }
    phi = next;
    lo = std::min(lo, phi);
    hi = std::max(hi, phi);
  }
  close_piece(m - 1);
  return pieces;
}

DcCertificate dc_certify(const Polyline& p, Vec2 v, double lipschitz, double max_turn) {
  DcCertificate cert;
  cert.direction = v;
  cert.lipschitz = lipschitz;
  cert.turn = turn(p);
  const auto graph = is_lipschitz_graph(p, v, lipschitz);
  if (!graph.ok) {
    cert.reason = "not a " + std::to_string(lipschitz) + "-Lipschitz graph (vertices " +
                  std::to_string(graph.violation->first) + ", " + std::to_string(graph.violation->second) + ")";
    return cert;
  }
  if (cert.turn > max_turn + 1e-9) {
    cert.reason = "turn " + std::to_string(cert.turn) + " exceeds bound " + std::to_string(max_turn);
    return cert;
  }
  cert.ok = true;
  return cert;
}

Polyline realize(const EmbeddedGraph& graph, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::out_of_domain, "realize: tolerance must be positive");
  Polyline out;
  for (double t : graph.f.breakpoints()) out.vertices.push_back(graph.point(t));
  return out;
}

DCFun sample_function(const std::function<double(double)>& fn, double a, double b, double tol) {
  std::vector<double> xs{a};
  std::vector<double> ys{fn(a)};
  const auto refine = [&](auto&& self, double x0, double y0, double x1, double y1, int depth) -> void {
    const double xm = 0.5 * (x0 + x1);
    const double ym = fn(xm);
    if (depth < 40 && std::abs(ym - 0.5 * (y0 + y1)) > tol) {
      self(self, x0, y0, xm, ym, depth + 1);
      self(self, xm, ym, x1, y1, depth + 1);
      return;
    }
    xs.push_back(x1);
    ys.push_back(y1);
  };
  refine(refine, a, ys.front(), b, fn(b), 0);
  return DCFun::from_pl(xs, ys);
}

}  // namespace uwdc
