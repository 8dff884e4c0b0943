#include "uwdc/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uwdc/error.hpp"

namespace uwdc {

namespace {

bool same_direction(Vec2 a, Vec2 b) { return norm(a - b) <= 1e-12; }

// Graph point of a slab in its (v_perp, v) frame.
Vec2 frame_point(Vec2 v, double t, double s) { return t * perp_cw(v) + s * v; }

std::vector<double> merged_grid(const DCFun& a, const DCFun& b) {
  std::vector<double> xs = a.breakpoints();
  xs.insert(xs.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || x > out.back() + 1e-12 * (1.0 + std::abs(x))) out.push_back(x);
  out.back() = a.hi();
  return out;
}

// Polygonizes lower <= s <= upper over the common domain. The gap may vanish
// at the interval ends but not inside.
PolyRegion slab_region(Vec2 v, const DCFun& lower, const DCFun& upper, double tau) {
  PolyRegion out;
  const auto grid = merged_grid(lower, upper);
  std::vector<double> lo(grid.size()), hi(grid.size());
  bool thin = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    lo[i] = lower(grid[i]);
    hi[i] = upper(grid[i]);
    if (hi[i] < lo[i] - tau) throw Error(Errc::invalid_region, "slab lower function exceeds the upper one");
    if (hi[i] - lo[i] > tau) thin = false;
  }
  if (thin) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
      out.segments.push_back({frame_point(v, grid[i], lo[i]), frame_point(v, grid[i + 1], lo[i + 1])});
    return out;
  }
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (hi[i] - lo[i] <= tau) throw Error(Errc::degenerate_contact, "slab is pinched inside its interval");
  Ring ring;
  for (std::size_t i = 0; i < grid.size(); ++i) ring.push_back(frame_point(v, grid[i], lo[i]));
  for (std::size_t k = grid.size(); k-- > 0;) {
    if ((k == 0 || k + 1 == grid.size()) && hi[k] - lo[k] <= tau) continue;
    ring.push_back(frame_point(v, grid[k], hi[k]));
  }
  out.polygons.push_back({std::move(ring), {}});
  return out;
}

DCFun shifted(const DCFun& f, double dt, double ds) {
  const auto move = [&](const ConvexPL& p, double add) {
    std::vector<double> xs = p.breakpoints(), ys = p.values();
    for (double& x : xs) x += dt;
    for (double& y : ys) y += add;
    return ConvexPL(std::move(xs), std::move(ys));
  };
  return DCFun(move(f.g(), ds), move(f.h(), 0.0));
}

// Same-direction slab intersection computed on the functions themselves.
PolyRegion slab_lattice(const std::vector<const SlabShape*>& slabs, double tau) {
  PolyRegion out;
  const Vec2 v = slabs.front()->direction;
  double a = -INFINITY, b = INFINITY;
  for (const auto* s : slabs) {
    a = std::max(a, s->lower.lo());
    b = std::min(b, s->lower.hi());
  }
  if (a > b + tau) return out;
  if (b - a <= tau) {
    double lo = -INFINITY, hi = INFINITY;
    for (const auto* s : slabs) {
      lo = std::max(lo, s->lower(std::clamp(a, s->lower.lo(), s->lower.hi())));
      hi = std::min(hi, s->upper(std::clamp(a, s->upper.lo(), s->upper.hi())));
    }
    if (hi > lo + tau) out.segments.push_back({frame_point(v, a, lo), frame_point(v, a, hi)});
    else if (hi >= lo - tau) out.points.push_back(frame_point(v, a, lo));
    return out;
  }
  DCFun lower = slabs.front()->lower.restricted(a, b);
  DCFun upper = slabs.front()->upper.restricted(a, b);
  for (std::size_t i = 1; i < slabs.size(); ++i) {
    lower = max2(lower, slabs[i]->lower.restricted(a, b));
    upper = min2(upper, slabs[i]->upper.restricted(a, b));
  }
  const DCFun gap = add(upper, negate(lower));
  // Maximal intervals where the gap is nonnegative.
  const auto& xs = gap.breakpoints();
  const auto gv = gap.values();
  std::vector<double> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      const double g0 = gv[i - 1], g1 = gv[i];
      if ((g0 > tau && g1 < -tau) || (g0 < -tau && g1 > tau)) {
        pts.push_back(xs[i - 1] + (xs[i] - xs[i - 1]) * g0 / (g0 - g1));
        vals.push_back(0.0);
      }
    }
    pts.push_back(xs[i]);
    vals.push_back(gv[i]);
  }
  std::vector<std::pair<double, double>> runs;
  for (std::size_t i = 0; i < pts.size();) {
    if (vals[i] < -tau) { ++i; continue; }
    std::size_t j = i;
    while (j + 1 < pts.size() && vals[j + 1] >= -tau) ++j;
    runs.emplace_back(pts[i], pts[j]);
    i = j + 1;
  }
  for (auto [s, e] : runs) {
    if (e - s <= tau) {
      out.points.push_back(frame_point(v, s, lower(s)));
      continue;
    }
    PolyRegion part = slab_region(v, lower.restricted(s, e), upper.restricted(s, e), tau);
    out.polygons.insert(out.polygons.end(), part.polygons.begin(), part.polygons.end());
    out.segments.insert(out.segments.end(), part.segments.begin(), part.segments.end());
  }
  return out;
}

}  // namespace

bool Piece::is_convex() const {
  return std::holds_alternative<ConvexPolygonShape>(shape) || std::holds_alternative<DiskShape>(shape) ||
         std::holds_alternative<SegmentShape>(shape) || std::holds_alternative<PointShape>(shape);
}

Piece make_polygon(std::string name, Ring ccw_vertices) {
  return {std::move(name), ConvexPolygonShape{std::move(ccw_vertices)}, kDefaultCurveTol};
}

Piece make_rect(std::string name, Vec2 lo, Vec2 hi) {
  return make_polygon(std::move(name), {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

Piece make_disk(std::string name, Vec2 center, double radius, double tol) {
  return {std::move(name), DiskShape{center, radius}, tol};
}

Piece make_slab(std::string name, Vec2 direction, DCFun lower, DCFun upper) {
  if (std::abs(norm(direction) - 1.0) > 1e-9) throw Error(Errc::not_unit, "slab direction must be a unit vector");
  if (std::abs(lower.lo() - upper.lo()) > kTau || std::abs(lower.hi() - upper.hi()) > kTau)
    throw Error(Errc::domain_mismatch, "slab bounds live on different intervals");
  slab_region(direction, lower, upper, kTau);  // validates lower <= upper
  return {std::move(name), SlabShape{direction, std::move(lower), std::move(upper)}, kDefaultCurveTol};
}

Piece make_segment(std::string name, Vec2 p, Vec2 q) { return {std::move(name), SegmentShape{p, q}, kDefaultCurveTol}; }

Piece make_point(std::string name, Vec2 p) { return {std::move(name), PointShape{p}, kDefaultCurveTol}; }

int disk_sides(double radius, double tol) {
  if (!(tol > 0.0) || !(radius > 0.0)) throw Error(Errc::out_of_domain, "disk tolerance and radius must be positive");
  const double half_angle = std::acos(std::max(-1.0, 1.0 - tol / radius));
  return std::max(3, static_cast<int>(std::ceil(std::numbers::pi / half_angle - 1e-9)));
}

PolyRegion polygonize(const Piece& piece) {
  PolyRegion out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygonShape>) {
          if (!is_convex_ring(s.vertices))
            throw Error(Errc::not_convex, "polygon piece '" + piece.name + "' is not counterclockwise convex");
          out.polygons.push_back({s.vertices, {}});
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          const int n = disk_sides(s.radius, piece.tol);
          Ring ring;
          for (int k = 0; k < n; ++k)
            ring.push_back(s.center + s.radius * unit_from_angle(2.0 * std::numbers::pi * k / n));
          out.polygons.push_back({std::move(ring), {}});
        } else if constexpr (std::is_same_v<T, SlabShape>) {
          if (std::abs(norm(s.direction) - 1.0) > 1e-9) throw Error(Errc::not_unit, "slab direction");
          if (std::abs(s.lower.lo() - s.upper.lo()) > 1e-12 || std::abs(s.lower.hi() - s.upper.hi()) > 1e-12)
            throw Error(Errc::domain_mismatch, "slab bounds on different intervals");
          out = slab_region(s.direction, s.lower, s.upper, kTau);
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          if (dist(s.p, s.q) <= kTau) out.points.push_back(s.p);
          else out.segments.push_back({s.p, s.q});
        } else {
          out.points.push_back(s.p);
        }
      },
      piece.shape);
  return out;
}

Rect default_window(const std::vector<Piece>& pieces) {
  Rect box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  double diameter = 0.0;
  for (const auto& piece : pieces) {
    const Rect b = polygonize(piece).bounds();
    diameter = std::max(diameter, dist(b.lo, b.hi));
    box.lo = {std::min(box.lo.x, b.lo.x), std::min(box.lo.y, b.lo.y)};
    box.hi = {std::max(box.hi.x, b.hi.x), std::max(box.hi.y, b.hi.y)};
  }
  const double margin = std::max(1.0, diameter);
  box.lo -= Vec2{margin, margin};
  box.hi += Vec2{margin, margin};
  return box;
}

Scene make_scene(std::vector<Piece> pieces, double tau) {
  if (pieces.empty()) throw Error(Errc::empty_input, "a scene needs at least one piece");
  Scene scene;
  scene.window = default_window(pieces);
  scene.pieces = std::move(pieces);
  scene.tau = tau;
  return scene;
}

std::vector<PolyRegion> polygonized(const Scene& scene) {
  std::vector<PolyRegion> out;
  out.reserve(scene.pieces.size());
  for (const auto& p : scene.pieces) out.push_back(polygonize(p));
  return out;
}

PolyRegion intersect_lattice(const Scene& scene, const std::vector<PolyRegion>& regions, IndexSet subset) {
  if (subset == 0) throw Error(Errc::empty_input, "lattice index set must be nonempty");
  std::vector<const SlabShape*> slabs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < scene.pieces.size(); ++i) {
    if (!(subset >> i & 1U)) continue;
    idx.push_back(i);
    if (const auto* s = std::get_if<SlabShape>(&scene.pieces[i].shape)) slabs.push_back(s);
  }
  if (idx.empty()) throw Error(Errc::out_of_domain, "lattice index set outside the scene");
  if (idx.size() > 1 && slabs.size() == idx.size() &&
      std::all_of(slabs.begin(), slabs.end(),
                  [&](const SlabShape* s) { return same_direction(s->direction, slabs.front()->direction); }))
    return slab_lattice(slabs, scene.tau);
  PolyRegion acc = regions[idx.front()];
  for (std::size_t k = 1; k < idx.size() && !acc.empty(); ++k) acc = intersect(acc, regions[idx[k]]);
  return acc;
}

PolyRegion intersect_lattice(const Scene& scene, IndexSet subset) {
  return intersect_lattice(scene, polygonized(scene), subset);
}

void for_each_lattice_set(const Scene& scene, const std::vector<PolyRegion>& regions,
                          const std::function<void(IndexSet, const PolyRegion&)>& visit) {
  const std::size_t n = scene.pieces.size();
  if (n > 20) throw Error(Errc::out_of_domain, "inclusion-exclusion limited to 20 pieces");
  const IndexSet full = (IndexSet{1} << n) - 1;
  std::vector<char> empty(full + 1, 0);
  for (IndexSet mask = 1; mask <= full; ++mask) {
    bool pruned = false;
    for (IndexSet rest = mask; rest && !pruned; rest &= rest - 1) {
      const IndexSet sub = mask & ~(rest & (~rest + 1));
      if (sub && empty[sub]) pruned = true;
    }
    if (pruned) {
      empty[mask] = 1;
      continue;
    }
    const PolyRegion m = intersect_lattice(scene, regions, mask);
    if (m.empty()) {
      empty[mask] = 1;
      continue;
    }
    visit(mask, m);
  }
}

PolyRegion union_region(const Scene& scene) {
  PolyRegion acc;
  for (const auto& r : polygonized(scene)) acc = unite(acc, r);
  return acc;
}

int complement_components(const Scene& scene) { return complement_count(union_region(scene)); }

std::optional<std::string> find_degenerate_pair(const Scene& scene) {
  const auto regions = polygonized(scene);
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j)
      if (auto msg = find_contact(regions[i], regions[j], scene.tau))
        return "pieces '" + scene.pieces[i].name + "' and '" + scene.pieces[j].name + "': " + *msg;
  return std::nullopt;
}

void require_generic(const Scene& scene) {
  if (auto msg = find_degenerate_pair(scene)) throw Error(Errc::degenerate_contact, *msg);
}

Piece transformed(const Piece& piece, const Isometry& iso) {
  Piece out = piece;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygonShape>) {
          for (Vec2& p : s.vertices) p = iso.apply(p);
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          s.center = iso.apply(s.center);
        } else if constexpr (std::is_same_v<T, SlabShape>) {
          const Vec2 v = normalized(iso.apply_linear(s.direction));
          const double dt = dot(iso.z, perp_cw(v)), ds = dot(iso.z, v);
          s.direction = v;
          s.lower = shifted(s.lower, dt, ds);
          s.upper = shifted(s.upper, dt, ds);
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          s.p = iso.apply(s.p);
          s.q = iso.apply(s.q);
        } else {
          s.p = iso.apply(s.p);
        }
      },
      out.shape);
  return out;
}

Scene transformed(const Scene& scene, const Isometry& iso) {
  Scene out = scene;
  for (auto& p : out.pieces) p = transformed(p, iso);
  out.window = default_window(out.pieces);
  return out;
}

}  // namespace uwdc
