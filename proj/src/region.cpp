#include "uwdc/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "uwdc/error.hpp"

namespace uwdc {

namespace bg = boost::geometry;

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

constexpr double kSliverArea = 1e-14;

BPolygon to_boost(const Polygon& poly) {
  BPolygon out;
  for (Vec2 p : poly.outer) out.outer().emplace_back(p.x, p.y);
  out.outer().emplace_back(poly.outer.front().x, poly.outer.front().y);
  for (const Ring& hole : poly.holes) {
    out.inners().emplace_back();
    for (Vec2 p : hole) out.inners().back().emplace_back(p.x, p.y);
    out.inners().back().emplace_back(hole.front().x, hole.front().y);
  }
  bg::correct(out);
  return out;
}

BMulti to_boost(const std::vector<Polygon>& polys) {
  BMulti out;
  for (const auto& p : polys) out.push_back(to_boost(p));
  return out;
}

template <typename BRing>
Ring from_boost_ring(const BRing& ring) {
  Ring out;
  for (const auto& p : ring) {
    const Vec2 q{p.x(), p.y()};
    if (!out.empty() && dist(out.back(), q) <= 1e-14) continue;
    out.push_back(q);
  }
  if (out.size() > 1 && dist(out.front(), out.back()) <= 1e-14) out.pop_back();
  return out;
}

std::vector<Polygon> from_boost(const BMulti& multi) {
  std::vector<Polygon> out;
  for (const auto& bp : multi) {
    Polygon poly;
    poly.outer = from_boost_ring(bp.outer());
    if (poly.outer.size() < 3 || signed_area(poly.outer) <= kSliverArea) continue;
    for (const auto& inner : bp.inners()) {
      Ring hole = from_boost_ring(inner);
      if (hole.size() >= 3 && -signed_area(hole) > kSliverArea) poly.holes.push_back(std::move(hole));
    }
    out.push_back(std::move(poly));
  }
  return out;
}

bool single_convex(const std::vector<Polygon>& polys) {
  return polys.size() == 1 && polys.front().holes.empty() && is_convex_ring(polys.front().outer);
}

bool point_in_ring(const Ring& ring, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Vec2 a = ring[i], b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

template <typename F>
void for_each_ring(const std::vector<Polygon>& polys, F&& f) {
  for (const auto& poly : polys) {
    f(poly.outer);
    for (const auto& h : poly.holes) f(h);
  }
}

template <typename F>
void for_each_edge(const std::vector<Polygon>& polys, F&& f) {
  for_each_ring(polys, [&](const Ring& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) f(Segment2{ring[i], ring[(i + 1) % ring.size()]});
  });
}

bool on_boundary(const std::vector<Polygon>& polys, Vec2 p, double tol) {
  bool hit = false;
  for_each_edge(polys, [&](Segment2 e) {
    if (!hit && dist_to_segment(p, e.a, e.b) <= tol) hit = true;
  });
  return hit;
}

bool inside_polygons(const std::vector<Polygon>& polys, Vec2 p) {
  for (const auto& poly : polys) {
    if (!point_in_ring(poly.outer, p)) continue;
    bool in_hole = false;
    for (const auto& h : poly.holes)
      if (point_in_ring(h, p)) in_hole = true;
    if (!in_hole) return true;
  }
  return false;
}

bool closed_member(const std::vector<Polygon>& polys, Vec2 p, double tol) {
  return on_boundary(polys, p, tol) || inside_polygons(polys, p);
}

double param_on(Segment2 s, Vec2 p) {
  const Vec2 d = s.b - s.a;
  return dot(p - s.a, d) / dot(d, d);
}

Vec2 at(Segment2 s, double t) { return s.a + t * (s.b - s.a); }

std::vector<double> clean_params(std::vector<double> ts) {
  for (double& t : ts) t = std::clamp(t, 0.0, 1.0);
  std::sort(ts.begin(), ts.end());
  std::vector<double> out;
  for (double t : ts)
    if (out.empty() || t > out.back() + 1e-12) out.push_back(t);
  return out;
}

// Parameters where s meets any ring edge of polys.
std::vector<double> ring_breaks(const std::vector<Polygon>& polys, Segment2 s, double tol) {
  std::vector<double> ts{0.0, 1.0};
  for_each_edge(polys, [&](Segment2 e) {
    const auto m = meet(s, e, tol);
    if (m.kind == SegmentMeet::Kind::none) return;
    ts.push_back(param_on(s, m.p));
    if (m.kind == SegmentMeet::Kind::overlap) ts.push_back(param_on(s, m.q));
  });
  return clean_params(std::move(ts));
}

void clip_to_polygons(const std::vector<Polygon>& polys, Segment2 s, std::vector<Segment2>& segs,
                      std::vector<Vec2>& pts, double tol) {
  if (polys.empty()) return;
  const double len = s.length();
  if (len <= tol) {
    if (closed_member(polys, s.a, tol)) pts.push_back(s.a);
    return;
  }
  const auto ts = ring_breaks(polys, s, tol);
  std::vector<char> kept(ts.size() - 1, 0);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    kept[i] = closed_member(polys, at(s, 0.5 * (ts[i] + ts[i + 1])), tol) ? 1 : 0;
  for (std::size_t i = 0; i + 1 < ts.size();) {
    if (!kept[i]) { ++i; continue; }
    std::size_t j = i;
    while (j + 1 < kept.size() && kept[j + 1]) ++j;
    segs.push_back({at(s, ts[i]), at(s, ts[j + 1])});
    i = j + 1;
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const bool left = k > 0 && kept[k - 1];
    const bool right = k + 1 < ts.size() && kept[k];
    if (!left && !right && closed_member(polys, at(s, ts[k]), tol)) pts.push_back(at(s, ts[k]));
  }
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// Convex ring clipped by {y : y.v <= t} (Sutherland-Hodgman, one plane).
Ring clip_ring_halfplane(const Ring& ring, Vec2 v, double t) {
  Ring out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % ring.size()];
    const double fa = dot(a, v) - t, fb = dot(b, v) - t;
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) out.push_back(a + (fa / (fa - fb)) * (b - a));
  }
  return out;
}

Ring rect_ring(const Rect& f) { return {f.lo, {f.hi.x, f.lo.y}, f.hi, {f.lo.x, f.hi.y}}; }

}  // namespace

// ------------------------------------------------------------ basic queries

std::vector<Vec2> PolyRegion::vertices() const {
  std::vector<Vec2> out;
  for_each_ring(polygons, [&](const Ring& r) { out.insert(out.end(), r.begin(), r.end()); });
  for (const auto& s : segments) {
    out.push_back(s.a);
    out.push_back(s.b);
  }
  out.insert(out.end(), points.begin(), points.end());
  return out;
}

Rect PolyRegion::bounds() const {
  Rect box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (Vec2 p : vertices()) {
    box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y)};
    box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y)};
  }
  return box;
}

double signed_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  return 0.5 * twice;
}

bool is_convex_ring(const Ring& ring, double tol) {
  if (ring.size() < 3) return false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 a = ring[i], b = ring[(i + 1) % ring.size()], c = ring[(i + 2) % ring.size()];
    if (cross(b - a, c - b) < -tol * norm(b - a) * norm(c - b)) return false;
  }
  return signed_area(ring) > 0.0;
}

double area(const PolyRegion& r) {
  double total = 0.0;
  for_each_ring(r.polygons, [&](const Ring& ring) { total += signed_area(ring); });
  return total;
}

double boundary_length(const PolyRegion& r) {
  double total = 0.0;
  for_each_edge(r.polygons, [&](Segment2 e) { total += e.length(); });
  return total;
}

PolyRegion transformed(const PolyRegion& r, const Isometry& iso) {
  PolyRegion out = r;
  for (auto& poly : out.polygons) {
    for (Vec2& p : poly.outer) p = iso.apply(p);
    for (auto& h : poly.holes)
      for (Vec2& p : h) p = iso.apply(p);
  }
  for (auto& s : out.segments) s = {iso.apply(s.a), iso.apply(s.b)};
  for (Vec2& p : out.points) p = iso.apply(p);
  return out;
}

bool in_closed_area(const PolyRegion& r, Vec2 p, double tol) { return closed_member(r.polygons, p, tol); }

bool in_open_area(const PolyRegion& r, Vec2 p, double tol) {
  return !on_boundary(r.polygons, p, tol) && inside_polygons(r.polygons, p);
}

// ------------------------------------------------------------- segments

SegmentMeet meet(Segment2 s, Segment2 t, double tol) {
  SegmentMeet out;
  const Vec2 ds = s.b - s.a, dt = t.b - t.a;
  const double ls = norm(ds), lt = norm(dt);
  if (ls <= tol || lt <= tol) {
    const Vec2 p = ls <= tol ? s.a : t.a;
    const Segment2 other = ls <= tol ? t : s;
    if (dist_to_segment(p, other.a, other.b) <= tol) {
      out.kind = SegmentMeet::Kind::point;
      out.p = out.q = p;
    }
    return out;
  }
  const double c = cross(ds, dt);
  if (std::abs(c) > 1e-12 * ls * lt) {
    const double u = cross(t.a - s.a, dt) / c;
    const double w = cross(t.a - s.a, ds) / c;
    const double us = tol / ls, ws = tol / lt;
    if (u >= -us && u <= 1.0 + us && w >= -ws && w <= 1.0 + ws) {
      out.kind = SegmentMeet::Kind::point;
      out.p = out.q = s.a + std::clamp(u, 0.0, 1.0) * ds;
    }
    return out;
  }
  if (std::abs(cross(ds, t.a - s.a)) / ls > tol) return out;
  const double ta = param_on(s, t.a), tb = param_on(s, t.b);
  const double lo = std::max(0.0, std::min(ta, tb)), hi = std::min(1.0, std::max(ta, tb));
  if (hi < lo - tol / ls) return out;
  if ((hi - lo) * ls <= tol) {
    out.kind = SegmentMeet::Kind::point;
    out.p = out.q = at(s, std::clamp(0.5 * (lo + hi), 0.0, 1.0));
    return out;
  }
  out.kind = SegmentMeet::Kind::overlap;
  out.p = at(s, lo);
  out.q = at(s, hi);
  return out;
}

void clip_segment_to_area(const PolyRegion& r, Segment2 s, std::vector<Segment2>& out_segments,
                          std::vector<Vec2>& out_points, double tol) {
  clip_to_polygons(r.polygons, s, out_segments, out_points, tol);
}

std::vector<int> PlanarGraph::degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

PlanarGraph planarize(std::span<const Segment2> segments, std::span<const Vec2> points, double tol) {
  PlanarGraph g;
  const auto vertex_id = [&](Vec2 p) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (dist(g.vertices[i], p) <= tol) return i;
    g.vertices.push_back(p);
    return g.vertices.size() - 1;
  };
  std::vector<Segment2> segs;
  for (const auto& s : segments) {
    if (s.length() <= tol) {
      vertex_id(s.a);
      continue;
    }
    segs.push_back(s);
  }
  for (const auto& s : segs) {
    vertex_id(s.a);
    vertex_id(s.b);
  }
  for (Vec2 p : points) vertex_id(p);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto m = meet(segs[i], segs[j], tol);
      if (m.kind == SegmentMeet::Kind::none) continue;
      vertex_id(m.p);
      if (m.kind == SegmentMeet::Kind::overlap) vertex_id(m.q);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& s : segs) {
    std::vector<std::pair<double, std::size_t>> on;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (dist_to_segment(g.vertices[v], s.a, s.b) <= tol) on.emplace_back(param_on(s, g.vertices[v]), v);
    std::sort(on.begin(), on.end());
    for (std::size_t k = 0; k + 1 < on.size(); ++k) {
      const std::size_t a = on[k].second, b = on[k + 1].second;
      if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

PlanarGraph lower_graph(const PolyRegion& r) { return planarize(r.segments, r.points); }

PlanarGraph lower_graph_in_area(const PolyRegion& r) {
  if (r.polygons.empty() || !r.has_lower_dim()) return {};
  const PlanarGraph g = lower_graph(r);
  std::vector<Segment2> segs;
  std::vector<Vec2> pts;
  const auto deg = g.degrees();
  for (const auto& [a, b] : g.edges) clip_to_polygons(r.polygons, {g.vertices[a], g.vertices[b]}, segs, pts, kTau);
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (deg[v] == 0 && closed_member(r.polygons, g.vertices[v], kTau)) pts.push_back(g.vertices[v]);
  return planarize(segs, pts);
}

BoundaryFeatures boundary_features(const PolyRegion& r) {
  BoundaryFeatures out;
  for_each_edge(r.polygons, [&](Segment2 e) { out.segments.push_back(e); });
  if (!r.has_lower_dim()) return out;
  const PlanarGraph g = lower_graph(r);
  const auto deg = g.degrees();
  for (const auto& [a, b] : g.edges) {
    const Segment2 s{g.vertices[a], g.vertices[b]};
    const auto ts = ring_breaks(r.polygons, s, kTau);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (in_open_area(r, at(s, 0.5 * (ts[i] + ts[i + 1])))) continue;
      out.segments.push_back({at(s, ts[i]), at(s, ts[i + 1])});
    }
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (deg[v] == 0 && !in_open_area(r, g.vertices[v])) out.points.push_back(g.vertices[v]);
  return out;
}

// ------------------------------------------------------------- booleans

ConvexClip intersect_convex(const Ring& p, const Ring& q, double tol) {
  struct Half {
    Vec2 a;
    Vec2 dir;  // unit
    int src;   // 0: p, 1: q, 2: box
    Vec2 e0, e1;
  };
  constexpr double eps = 1e-12;
  // Angular order of directions without atan2: upper half-plane first, then by cross product.
  const auto upper = [](Vec2 d) { return d.y > 0.0 || (d.y == 0.0 && d.x > 0.0); };
  const auto before = [&](const Half& s, const Half& t) {
    const bool us = upper(s.dir), ut = upper(t.dir);
    if (us != ut) return us;
    return cross(s.dir, t.dir) > 0.0;
  };
  // A convex counterclockwise ring lists its edges in cyclic angular order;
  // rotating to the smallest angle makes each list sorted, and a merge suffices.
  // Edges of one ring whose half-plane contains the other ring's bounding
  // circle cannot cut the intersection. Only one ring may be pruned: each
  // dropped edge is implied by the other ring's full edge list.
  struct Circle {
    Vec2 c;
    double r = INFINITY;
  };
  const auto bounding = [](const Ring& ring) {
    Rect b{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
    for (Vec2 v : ring) {
      b.lo = {std::min(b.lo.x, v.x), std::min(b.lo.y, v.y)};
      b.hi = {std::max(b.hi.x, v.x), std::max(b.hi.y, v.y)};
    }
    Circle out{b.center(), 0.0};
    for (Vec2 v : ring) out.r = std::max(out.r, dist(v, out.c));
    return out;
  };
  const auto ring_halves = [&](const Ring& ring, int src, const Circle& other) {
    std::vector<Half> hs;
    hs.reserve(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Vec2 a = ring[i], b = ring[(i + 1) % ring.size()];
      const double len = dist(a, b);
      if (len <= 0.0) continue;
      const Vec2 d = (1.0 / len) * (b - a);
      if (cross(d, other.c - a) > other.r + 1e-6 * (1.0 + other.r)) continue;
      hs.push_back({a, d, src, a, b});
    }
    if (!hs.empty()) {
      const auto first = std::min_element(hs.begin(), hs.end(), before);
      std::rotate(hs.begin(), first, hs.end());
      if (!std::is_sorted(hs.begin(), hs.end(), before)) std::sort(hs.begin(), hs.end(), before);
    }
    return hs;
  };
  Rect box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (Vec2 v : p) {
    box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y)};
    box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y)};
  }
  const double pad = 1.0 + (box.hi.x - box.lo.x) + (box.hi.y - box.lo.y);
  box.lo -= Vec2{pad, pad};
  box.hi += Vec2{pad, pad};
  const Circle cp = bounding(p), cq = bounding(q);
  const bool prune_p = p.size() >= q.size();
  const auto hp = ring_halves(p, 0, prune_p ? cq : Circle{}), hq = ring_halves(q, 1, prune_p ? Circle{} : cp), hb = ring_halves(rect_ring(box), 2, Circle{});
  std::vector<Half> pq, hs;
  pq.reserve(hp.size() + hq.size());
  std::merge(hp.begin(), hp.end(), hq.begin(), hq.end(), std::back_inserter(pq), before);
  hs.reserve(pq.size() + hb.size());
  std::merge(pq.begin(), pq.end(), hb.begin(), hb.end(), std::back_inserter(hs), before);

  const auto outside = [&](const Half& h, Vec2 pt) { return cross(h.dir, pt - h.a) < -eps; };
  const auto inter = [](const Half& s, const Half& t) {
    const double alpha = cross(t.a - s.a, t.dir) / cross(s.dir, t.dir);
    return s.a + alpha * s.dir;
  };

  ConvexClip result;
  // Deque as a vector with a moving head.
  std::vector<Half> dq;
  dq.reserve(hs.size());
  std::size_t head = 0;
  const auto size = [&] { return dq.size() - head; };
  for (const Half& h : hs) {
    while (size() > 1 && outside(h, inter(dq[dq.size() - 1], dq[dq.size() - 2]))) dq.pop_back();
    while (size() > 1 && outside(h, inter(dq[head], dq[head + 1]))) ++head;
    if (size() > 0 && std::abs(cross(h.dir, dq.back().dir)) < eps) {
      if (dot(h.dir, dq.back().dir) < 0.0) return result;
      if (outside(h, dq.back().a)) {
        dq.pop_back();
      } else {
        continue;
      }
    }
    dq.push_back(h);
  }
  while (size() > 2 && outside(dq[head], inter(dq[dq.size() - 1], dq[dq.size() - 2]))) dq.pop_back();
  while (size() > 2 && outside(dq[dq.size() - 1], inter(dq[head], dq[head + 1]))) ++head;
  if (size() < 3) return result;
  dq.erase(dq.begin(), dq.begin() + static_cast<std::ptrdiff_t>(head));

  Ring ring;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < dq.size(); ++i) {
    const Half& s = dq[i];
    const Half& t = dq[(i + 1) % dq.size()];
    const Vec2 v = inter(s, t);
    if (s.src != t.src) {
      const double near = std::min({dist(v, s.e0), dist(v, s.e1), dist(v, t.e0), dist(v, t.e1)});
      if (near <= tol) result.degenerate = true;
    }
    if (!ring.empty() && dist(ring.back(), v) <= 1e-14) continue;
    if (!ring.empty()) perimeter += dist(ring.back(), v);
    ring.push_back(v);
  }
  if (ring.size() > 1 && dist(ring.front(), ring.back()) <= 1e-14) ring.pop_back();
  if (ring.size() < 3) return result;
  const double a = signed_area(ring);
  if (a <= tol * std::max(perimeter, 1e-300)) {
    if (a > 0.0) result.degenerate = true;
    return result;
  }
  result.ring = std::move(ring);
  return result;
}

namespace {

std::vector<Polygon> intersect_areas(const std::vector<Polygon>& a, const std::vector<Polygon>& b,
                                     bool* degenerate) {
  if (a.empty() || b.empty()) return {};
  if (single_convex(a) && single_convex(b)) {
    auto clip = intersect_convex(a.front().outer, b.front().outer);
    if (degenerate && clip.degenerate) *degenerate = true;
    if (clip.ring.empty()) return {};
    return {Polygon{std::move(clip.ring), {}}};
  }
  BMulti out;
  bg::intersection(to_boost(a), to_boost(b), out);
  return from_boost(out);
}

struct EdgeIndex {
  std::vector<Segment2> edges;  // sorted by min x
  std::vector<double> min_x;
  explicit EdgeIndex(std::vector<Segment2> es) : edges(std::move(es)) {
    std::sort(edges.begin(), edges.end(),
              [](const Segment2& s, const Segment2& t) { return std::min(s.a.x, s.b.x) < std::min(t.a.x, t.b.x); });
    for (const auto& e : edges) min_x.push_back(std::min(e.a.x, e.b.x));
  }
  template <typename F>
  void query(double lo_x, double hi_x, double lo_y, double hi_y, F&& f) const {
    const auto end = std::upper_bound(min_x.begin(), min_x.end(), hi_x) - min_x.begin();
    for (std::ptrdiff_t i = 0; i < end; ++i) {
      const Segment2& e = edges[static_cast<std::size_t>(i)];
      if (std::max(e.a.x, e.b.x) < lo_x) continue;
      if (std::max(e.a.y, e.b.y) < lo_y || std::min(e.a.y, e.b.y) > hi_y) continue;
      f(e);
    }
  }
};

std::vector<Segment2> ring_edges(const std::vector<Polygon>& polys) {
  std::vector<Segment2> out;
  for_each_edge(polys, [&](Segment2 e) { out.push_back(e); });
  return out;
}

}  // namespace

PolyRegion intersect(const PolyRegion& a, const PolyRegion& b, bool assume_generic, bool* degenerate) {
  PolyRegion out;
  out.polygons = intersect_areas(a.polygons, b.polygons, degenerate);

  for (const auto& s : a.segments) clip_to_polygons(b.polygons, s, out.segments, out.points, kTau);
  for (const auto& s : b.segments) clip_to_polygons(a.polygons, s, out.segments, out.points, kTau);
  for (Vec2 p : a.points)
    if (closed_member(b.polygons, p, kTau)) out.points.push_back(p);
  for (Vec2 p : b.points)
    if (closed_member(a.polygons, p, kTau)) out.points.push_back(p);
  for (const auto& s : a.segments) {
    for (const auto& t : b.segments) {
      const auto m = meet(s, t);
      if (m.kind == SegmentMeet::Kind::overlap) out.segments.push_back({m.p, m.q});
      else if (m.kind == SegmentMeet::Kind::point) out.points.push_back(m.p);
    }
    for (Vec2 p : b.points)
      if (dist_to_segment(p, s.a, s.b) <= kTau) out.points.push_back(p);
  }
  for (Vec2 p : a.points) {
    for (const auto& t : b.segments)
      if (dist_to_segment(p, t.a, t.b) <= kTau) out.points.push_back(p);
    for (Vec2 q : b.points)
      if (dist(p, q) <= kTau) out.points.push_back(p);
  }

  if (!assume_generic && !a.polygons.empty() && !b.polygons.empty()) {
    // Contacts of the two boundaries that are not covered by the area part.
    const EdgeIndex index(ring_edges(b.polygons));
    for_each_edge(a.polygons, [&](Segment2 e) {
      index.query(std::min(e.a.x, e.b.x) - kTau, std::max(e.a.x, e.b.x) + kTau, std::min(e.a.y, e.b.y) - kTau,
                  std::max(e.a.y, e.b.y) + kTau, [&](const Segment2& f) {
                    const auto m = meet(e, f);
                    if (m.kind == SegmentMeet::Kind::none) return;
                    const bool covered = closed_member(out.polygons, m.p, kTau) &&
                                         closed_member(out.polygons, m.q, kTau) &&
                                         closed_member(out.polygons, 0.5 * (m.p + m.q), kTau);
                    if (covered) return;
                    if (m.kind == SegmentMeet::Kind::overlap) out.segments.push_back({m.p, m.q});
                    else out.points.push_back(m.p);
                  });
    });
  }
  return out;
}

PolyRegion unite(const PolyRegion& a, const PolyRegion& b) {
  PolyRegion out;
  if (a.polygons.empty()) {
    out.polygons = b.polygons;
  } else if (b.polygons.empty()) {
    out.polygons = a.polygons;
  } else {
    BMulti u;
    bg::union_(to_boost(a.polygons), to_boost(b.polygons), u);
    out.polygons = from_boost(u);
  }
  out.segments = a.segments;
  out.segments.insert(out.segments.end(), b.segments.begin(), b.segments.end());
  out.points = a.points;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  return out;
}

PolyRegion clip_halfplane(const PolyRegion& r, Vec2 v, double t) {
  if (std::abs(norm(v) - 1.0) > 1e-9) throw Error(Errc::not_unit, "halfplane normal");
  PolyRegion out;
  if (r.empty()) return out;
  if (!r.polygons.empty()) {
    Rect box = r.bounds();
    const double pad = 1.0 + (box.hi.x - box.lo.x) + (box.hi.y - box.lo.y);
    box.lo -= Vec2{pad, pad};
    box.hi += Vec2{pad, pad};
    const Ring half = clip_ring_halfplane(rect_ring(box), v, t);
    if (half.size() >= 3) out.polygons = intersect_areas(r.polygons, {Polygon{half, {}}}, nullptr);
  }
  for (const auto& s : r.segments) {
    const double fa = dot(s.a, v) - t, fb = dot(s.b, v) - t;
    if (fa <= 0.0 && fb <= 0.0) {
      out.segments.push_back(s);
    } else if (fa < 0.0 || fb < 0.0) {
      const Vec2 cut = s.a + (fa / (fa - fb)) * (s.b - s.a);
      out.segments.push_back(fa < 0.0 ? Segment2{s.a, cut} : Segment2{cut, s.b});
    } else if (fa == 0.0 || fb == 0.0) {
      out.points.push_back(fa == 0.0 ? s.a : s.b);
    }
  }
  for (Vec2 p : r.points)
    if (dot(p, v) <= t) out.points.push_back(p);
  return out;
}

double area_in_rect(const PolyRegion& r, const Rect& f) {
  if (r.polygons.empty()) return 0.0;
  const Polygon box{rect_ring(f), {}};
  double total = 0.0;
  for (const auto& poly : intersect_areas(r.polygons, {box}, nullptr)) {
    total += signed_area(poly.outer);
    for (const auto& h : poly.holes) total += signed_area(h);
  }
  return total;
}

// ------------------------------------------------------------- topology

int euler_char(const PolyRegion& r) {
  int chi = 0;
  for (const auto& poly : r.polygons) {
    if (signed_area(poly.outer) <= 0.0) throw Error(Errc::invalid_nesting, "outer ring is not counterclockwise");
    ++chi;
    for (const auto& h : poly.holes) {
      if (signed_area(h) >= 0.0) throw Error(Errc::invalid_nesting, "hole ring is not clockwise");
      if (!point_in_ring(poly.outer, h.front()) && !on_boundary({Polygon{poly.outer, {}}}, h.front(), kTau))
        throw Error(Errc::invalid_nesting, "hole outside its outer ring");
      --chi;
    }
  }
  if (!r.has_lower_dim()) return chi;
  return chi + lower_graph(r).euler_char() - lower_graph_in_area(r).euler_char();
}

int component_count(const PolyRegion& r) {
  const PlanarGraph g = lower_graph(r);
  const std::size_t np = r.polygons.size();
  DisjointSets sets(np + g.vertices.size());
  for (const auto& [a, b] : g.edges) sets.unite(np + a, np + b);
  for (std::size_t k = 0; k < np; ++k) {
    const std::vector<Polygon> one{r.polygons[k]};
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (closed_member(one, g.vertices[v], kTau)) sets.unite(k, np + v);
    for (const auto& [a, b] : g.edges) {
      if (sets.find(np + a) == sets.find(k)) continue;
      std::vector<Segment2> segs;
      std::vector<Vec2> pts;
      clip_to_polygons(one, {g.vertices[a], g.vertices[b]}, segs, pts, kTau);
      if (!segs.empty() || !pts.empty()) sets.unite(k, np + a);
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < np + g.vertices.size(); ++i) roots.insert(sets.find(i));
  return static_cast<int>(roots.size());
}

int complement_count(const PolyRegion& r) {
  // Planar duality: bounded complement components = b1 = b0 - chi.
  return 1 + component_count(r) - euler_char(r);
}

std::optional<std::string> find_contact(const PolyRegion& a, const PolyRegion& b, double tol) {
  const auto check = [tol](const PolyRegion& from, const PolyRegion& to) -> std::optional<std::string> {
    std::vector<Segment2> features = ring_edges(to.polygons);
    features.insert(features.end(), to.segments.begin(), to.segments.end());
    const EdgeIndex index(std::move(features));
    for (Vec2 v : from.vertices()) {
      bool hit = false;
      index.query(v.x - tol, v.x + tol, v.y - tol, v.y + tol, [&](const Segment2& e) {
        if (!hit && dist_to_segment(v, e.a, e.b) <= tol) hit = true;
      });
      for (Vec2 p : to.points)
        if (dist(p, v) <= tol) hit = true;
      if (hit) return "vertex (" + std::to_string(v.x) + ", " + std::to_string(v.y) + ") touches a boundary";
    }
    return std::nullopt;
  };
  if (auto msg = check(a, b)) return msg;
  return check(b, a);
}

}  // namespace uwdc
