#include "uwdc/curvature.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "uwdc/error.hpp"

namespace uwdc {

namespace bg = boost::geometry;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Length of the part of s inside the closed rectangle (Liang-Barsky).
double clipped_length(Segment2 s, const std::optional<Rect>& window) {
  if (!window) return s.length();
  const Vec2 d = s.b - s.a;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {s.a.x - window->lo.x, window->hi.x - s.a.x, s.a.y - window->lo.y, window->hi.y - s.a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return 0.0;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) t0 = std::max(t0, r);
    else t1 = std::min(t1, r);
    if (t0 > t1) return 0.0;
  }
  return (t1 - t0) * s.length();
}

bool inside(Vec2 p, const std::optional<Rect>& window) { return !window || window->contains(p); }

struct Contribution {
  double c0 = 0.0;
  double c1 = 0.0;
  double var = 0.0;
};

Contribution area_contribution(const PolyRegion& r, const std::optional<Rect>& window) {
  Contribution out;
  double length = 0.0, turning = 0.0, variation = 0.0;
  const auto ring_terms = [&](const Ring& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 prev = ring[(i + n - 1) % n], cur = ring[i], next = ring[(i + 1) % n];
      length += clipped_length({cur, next}, window);
      if (!inside(cur, window)) continue;
      const double ext = signed_angle(cur - prev, next - cur);
      turning += ext;
      variation += std::abs(ext);
    }
  };
  for (const auto& poly : r.polygons) {
    ring_terms(poly.outer);
    for (const auto& h : poly.holes) ring_terms(h);
  }
  out.c0 = turning / kTwoPi;
  out.c1 = 0.5 * length;
  out.var = variation / kTwoPi;
  return out;
}

// A planar graph has C0 mass 1 - deg/2 at each vertex and C1 equal to its length.
Contribution graph_contribution(const PlanarGraph& g, const std::optional<Rect>& window) {
  Contribution out;
  const auto deg = g.degrees();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!inside(g.vertices[v], window)) continue;
    const double mass = 1.0 - 0.5 * deg[v];
    out.c0 += mass;
    out.var += std::abs(mass);
  }
  for (const auto& [a, b] : g.edges) out.c1 += clipped_length({g.vertices[a], g.vertices[b]}, window);
  return out;
}

// Boost pre-simplifies buffer input at distance/1000, which would drop the
// vertices of finely polygonized curves.
struct ExactDistance : bg::strategy::buffer::distance_symmetric<double> {
  using distance_symmetric::distance_symmetric;
  double simplify_distance() const { return 0.0; }
};

double sign_of(IndexSet mask) { return std::popcount(mask) % 2 == 1 ? 1.0 : -1.0; }

void require_window(const std::optional<Rect>& window) {
  if (window && !(window->hi.x > window->lo.x && window->hi.y > window->lo.y))
    throw Error(Errc::invalid_region, "query window must have positive extent");
}

}  // namespace

CurvatureTable curvature_region(const PolyRegion& r, const std::optional<Rect>& window) {
  require_window(window);
  CurvatureTable table;
  table.localized_to = window;
  const Contribution a = area_contribution(r, window);
  table.c0 = a.c0;
  table.c1 = a.c1;
  table.c2 = window ? area_in_rect(r, *window) : area(r);
  if (r.has_lower_dim()) {
    const Contribution g = graph_contribution(lower_graph(r), window);
    const Contribution ga = graph_contribution(lower_graph_in_area(r), window);
    table.c0 += g.c0 - ga.c0;
    table.c1 += g.c1 - ga.c1;
  }
  if (table.c2 < 0.0) throw Error(Errc::invalid_region, "negative area: ring orientation is wrong");
  return table;
}

double c0_var(const PolyRegion& r, const std::optional<Rect>& window) {
  require_window(window);
  double total = area_contribution(r, window).var;
  if (r.has_lower_dim()) {
    total += graph_contribution(lower_graph(r), window).var;
    total += graph_contribution(lower_graph_in_area(r), window).var;
  }
  return total;
}

CurvatureTable curvature_scene_table(const Scene& scene, const std::optional<Rect>& window) {
  require_generic(scene);
  CurvatureTable total;
  total.localized_to = window;
  const auto regions = polygonized(scene);
  for_each_lattice_set(scene, regions, [&](IndexSet mask, const PolyRegion& m) {
    const CurvatureTable t = curvature_region(m, window);
    const double s = sign_of(mask);
    total.c0 += s * t.c0;
    total.c1 += s * t.c1;
    total.c2 += s * t.c2;
  });
  return total;
}

double curvature_scene(const Scene& scene, int k, const std::optional<Rect>& window) {
  if (k < 0 || k > 2) throw Error(Errc::out_of_domain, "curvature index must be 0, 1 or 2");
  return curvature_scene_table(scene, window)[k];
}

IdentityReport gauss_bonnet_check(const Scene& scene, double tol) {
  IdentityReport report;
  report.lhs = curvature_scene(scene, 0);
  report.rhs = euler_char(union_region(scene));
  report.ok = std::abs(report.lhs - report.rhs) <= tol;
  if (!report.ok) report.detail = "C0 differs from the Euler characteristic of the union";
  return report;
}

IdentityReport slicing_identity_check(const Scene& scene, Vec2 v, double t) {
  require_generic(scene);
  const PolyRegion u = union_region(scene);
  const auto touches = [&](const PolyRegion& r) {
    for (Vec2 p : r.vertices())
      if (std::abs(dot(p, v) - t) <= scene.tau) return true;
    return false;
  };
  if (touches(u)) throw Error(Errc::touching_halfplane, "halfplane boundary meets a vertex of the union");
  const auto regions = polygonized(scene);
  double sum = 0.0;
  bool touching = false;
  for_each_lattice_set(scene, regions, [&](IndexSet mask, const PolyRegion& m) {
    if (touches(m)) touching = true;
    sum += sign_of(mask) * euler_char(clip_halfplane(m, v, t));
  });
  if (touching) throw Error(Errc::touching_halfplane, "halfplane boundary meets a vertex of a lattice set");
  IdentityReport report;
  report.lhs = euler_char(clip_halfplane(u, v, t));
  report.rhs = sum;
  report.ok = report.lhs == report.rhs;
  if (!report.ok) report.detail = "sliced Euler characteristics disagree";
  return report;
}

double parallel_set_area(const PolyRegion& r, double eps, int points_per_circle) {
  using BPoint = bg::model::d2::point_xy<double>;
  using BPolygon = bg::model::polygon<BPoint, false, true>;
  using BMulti = bg::model::multi_polygon<BPolygon>;
  using BLine = bg::model::linestring<BPoint>;
  using BMultiPoint = bg::model::multi_point<BPoint>;

  const ExactDistance distance(eps);
  const bg::strategy::buffer::join_round join(points_per_circle);
  const bg::strategy::buffer::end_round end(points_per_circle);
  const bg::strategy::buffer::point_circle circle(points_per_circle);
  const bg::strategy::buffer::side_straight side;

  BMulti acc;
  const auto absorb = [&](const BMulti& part) {
    if (acc.empty()) {
      acc = part;
      return;
    }
    BMulti merged;
    bg::union_(acc, part, merged);
    acc = std::move(merged);
  };
  if (!r.polygons.empty()) {
    BMulti polys;
    for (const auto& poly : r.polygons) {
      BPolygon bp;
      for (Vec2 p : poly.outer) bp.outer().emplace_back(p.x, p.y);
      bp.outer().emplace_back(poly.outer.front().x, poly.outer.front().y);
      for (const auto& h : poly.holes) {
        bp.inners().emplace_back();
        for (Vec2 p : h) bp.inners().back().emplace_back(p.x, p.y);
        bp.inners().back().emplace_back(h.front().x, h.front().y);
      }
      bg::correct(bp);
      polys.push_back(std::move(bp));
    }
    BMulti out;
    bg::buffer(polys, out, distance, side, join, end, circle);
    absorb(out);
  }
  for (const auto& s : r.segments) {
    BLine line{{s.a.x, s.a.y}, {s.b.x, s.b.y}};
    BMulti out;
    bg::buffer(line, out, distance, side, join, end, circle);
    absorb(out);
  }
  if (!r.points.empty()) {
    BMultiPoint pts;
    for (Vec2 p : r.points) pts.emplace_back(p.x, p.y);
    BMulti out;
    bg::buffer(pts, out, distance, side, join, end, circle);
    absorb(out);
  }
  return bg::area(acc);
}

IdentityReport steiner_check(const Piece& piece, double eps, double tol) {
  if (!piece.is_convex()) throw Error(Errc::not_convex, "Steiner calibration needs a convex piece");
  if (!(eps > 0.0)) throw Error(Errc::out_of_domain, "parallel radius must be positive");
  const PolyRegion r = polygonize(piece);
  const CurvatureTable t = curvature_region(r);
  IdentityReport report;
  report.lhs = parallel_set_area(r, eps);
  report.rhs = t.c2 + 2.0 * eps * t.c1 + std::numbers::pi * eps * eps * t.c0;
  report.ok = std::abs(report.lhs - report.rhs) <= tol;
  if (!report.ok) report.detail = "parallel-set area does not match the Steiner polynomial";
  return report;
}

std::string curvature_csv(const std::string& scene_id, const CurvatureTable& table, const std::vector<int>& ks,
                          bool header) {
  std::ostringstream out;
  if (header) out << "scene,k,window,value\n";
  std::string window = "all";
  if (table.localized_to) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g", table.localized_to->lo.x, table.localized_to->lo.y,
                  table.localized_to->hi.x, table.localized_to->hi.y);
    window = buf;
  }
  for (int k : ks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", table[k]);
    out << scene_id << ',' << k << ',' << window << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace uwdc
