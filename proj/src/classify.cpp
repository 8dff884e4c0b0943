#include "uwdc/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

#include "uwdc/error.hpp"

namespace uwdc {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Vec2 closest_on_segment(Vec2 p, Segment2 s) {
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return s.a;
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return s.a + t * d;
}

// Projects x onto the boundary; NotBoundaryPoint if it is farther than tol.
Vec2 snap_to_boundary(const BoundaryFeatures& bf, Vec2 x, double tol) {
  double best = std::numeric_limits<double>::infinity();
  Vec2 at = x;
  for (const auto& s : bf.segments) {
    const Vec2 c = closest_on_segment(x, s);
    if (const double d = dist(x, c); d < best) best = d, at = c;
  }
  for (Vec2 p : bf.points)
    if (const double d = dist(x, p); d < best) best = d, at = p;
  if (!(best <= tol))
    throw Error(Errc::not_boundary_point, fmt("(%g, %g) is %g away from the boundary", x.x, x.y, best));
  return at;
}

double snap_tolerance(const Scene& scene) {
  double tol = scene.tau;
  for (const auto& p : scene.pieces)
    if (std::holds_alternative<DiskShape>(p.shape)) tol = std::max(tol, p.tol);
  return tol;
}

// Clips a segment (local coordinates) to the closed cone {0 <= s <= r, |w| <= k s}.
std::optional<Segment2> clip_to_cone(Segment2 seg, double r, double k) {
  const std::array<Vec2, 3> normals{Vec2{1.0, 0.0}, Vec2{-k, 1.0}, Vec2{-k, -1.0}};
  const std::array<double, 3> bounds{r, 0.0, 0.0};
  const Vec2 d = seg.b - seg.a;
  double t0 = 0.0, t1 = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double num = bounds[i] - dot(normals[i], seg.a);
    const double den = dot(normals[i], d);
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = num / den;
    if (den > 0.0) t1 = std::min(t1, t);
    else t0 = std::max(t0, t);
    if (t0 > t1) return std::nullopt;
  }
  return Segment2{seg.a + t0 * d, seg.a + t1 * d};
}

bool in_cone(Vec2 q, double r, double k, double slack) {
  return q.x >= -slack && q.x <= r + slack && std::abs(q.y) <= k * q.x + slack;
}

struct LocalBoundary {
  std::vector<Segment2> segments;
  std::vector<Vec2> points;
};

LocalBoundary to_local(const BoundaryFeatures& bf, const Isometry& inv) {
  LocalBoundary out;
  out.segments.reserve(bf.segments.size());
  for (const auto& s : bf.segments) out.segments.push_back({inv.apply(s.a), inv.apply(s.b)});
  for (Vec2 p : bf.points) out.points.push_back(inv.apply(p));
  return out;
}

struct ScaleResult {
  ConeType type;
  bool conclusive = false;
};

// One rung of the ladder: decides ST1/ST2/ST3 at (r, u) or reports why not.
ScaleResult classify_at_scale(const PolyRegion& m, const Isometry& iso, const LocalBoundary& local, double r,
                              double u) {
  ScaleResult res;
  res.type.r = r;
  res.type.u = u;
  const double delta = 1e-9 * r;
  const auto inside_m = [&](Vec2 q) { return in_closed_area(m, iso.apply(q)); };

  std::vector<Segment2> pieces;
  for (const auto& s : local.segments) {
    auto c = clip_to_cone(s, r, 2.0 * u);
    if (!c) continue;
    if (norm(c->a) <= delta && norm(c->b) <= delta) continue;
    if (c->length() <= delta) continue;
    pieces.push_back(*c);
  }
  std::size_t stray_points = 0;
  for (Vec2 p : local.points)
    if (norm(p) > delta && in_cone(p, r, 2.0 * u, 0.0)) ++stray_points;

  if (pieces.empty() && stray_points == 0) {
    res.conclusive = true;
    res.type.kind = inside_m({0.5 * r, 0.0}) ? ConeKind::ST2 : ConeKind::ST1;
    return res;
  }
  if (stray_points > 0) {
    res.type.detail = "isolated boundary point inside the cone";
    return res;
  }
  for (const auto& s : pieces) {
    for (Vec2 q : {s.a, s.b}) {
      if (!in_cone(q, r, u, delta)) {
        res.type.detail = fmt("boundary leaves the inner cone at local (%g, %g)", q.x, q.y);
        return res;
      }
    }
    if (std::abs(s.b.x - s.a.x) <= delta) {
      res.type.detail = "boundary segment orthogonal to the cone axis";
      return res;
    }
  }

  // Cells between endpoint and crossing abscissae; each cell is spanned by
  // the same number of non-crossing segments.
  std::vector<double> xs{0.0, r};
  for (const auto& s : pieces) {
    xs.push_back(s.a.x);
    xs.push_back(s.b.x);
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const SegmentMeet mt = meet(pieces[i], pieces[j], 0.0);
      if (mt.kind == SegmentMeet::Kind::point) xs.push_back(mt.p.x);
    }
  for (double& x : xs) x = std::clamp(x, 0.0, r);
  std::sort(xs.begin(), xs.end());
  std::vector<double> grid;
  for (double x : xs)
    if (grid.empty() || x - grid.back() > delta) grid.push_back(x);
  grid.back() = r;
  if (grid.size() < 2) {
    res.type.detail = "degenerate cone";
    return res;
  }

  const auto y_at = [](const Segment2& s, double x) {
    const double t = (x - s.a.x) / (s.b.x - s.a.x);
    return s.a.y + t * (s.b.y - s.a.y);
  };
  const std::size_t cells = grid.size() - 1;
  std::vector<std::vector<std::pair<double, double>>> ends(cells);  // (left, right) per graph
  std::size_t n = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double xa = grid[c], xb = grid[c + 1], xm = 0.5 * (xa + xb);
    std::vector<std::array<double, 3>> rows;  // (mid, left, right)
    for (const auto& s : pieces) {
      const double lo = std::min(s.a.x, s.b.x), hi = std::max(s.a.x, s.b.x);
      if (lo > xm || hi < xm) continue;
      rows.push_back({y_at(s, xm), y_at(s, xa), y_at(s, xb)});
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::array<double, 3>> uniq;
    for (const auto& row : rows)
      if (uniq.empty() || std::abs(row[0] - uniq.back()[0]) > delta) uniq.push_back(row);
    if (c == 0) n = uniq.size();
    if (uniq.size() != n || n == 0) {
      res.type.detail = fmt("number of boundary graphs changes near local s = %g", xa);
      return res;
    }
    for (const auto& row : uniq) ends[c].push_back({row[1], row[2]});
  }
  for (std::size_t c = 1; c < cells; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(ends[c - 1][i].second - ends[c][i].first) > 1e3 * delta) {
        res.type.detail = fmt("boundary graphs are not continuous at local s = %g", grid[c]);
        return res;
      }

  std::vector<DCFun> fs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> ys(grid.size());
    ys[0] = ends[0][i].first;
    for (std::size_t c = 0; c < cells; ++c) ys[c + 1] = ends[c][i].second;
    fs.push_back(DCFun::from_pl(grid, ys));
  }
  fs = sorted_envelopes(fs);
  for (const auto& f : fs) {
    if (std::abs(f(0.0)) > 1e3 * delta) {
      res.type.detail = "boundary graph does not start at the apex";
      return res;
    }
    if (std::abs(f.right_derivative(0.0)) > u / 8.0) {
      res.type.detail = fmt("initial slope %g exceeds u/8", f.right_derivative(0.0));
      return res;
    }
  }
  res.type.witnesses = fs;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool touching = false;
    for (std::size_t c = 1; c < grid.size(); ++c)
      if (grid[c] < r - delta && fs[i + 1](grid[c]) - fs[i](grid[c]) <= 1e3 * delta) touching = true;
    if (!touching) continue;
    for (std::size_t c = 0; c < cells; ++c) {
      const double xm = 0.5 * (grid[c] + grid[c + 1]);
      const double lo = fs[i](xm), hi = fs[i + 1](xm);
      if (hi - lo <= delta) continue;
      if (!inside_m({xm, 0.5 * (lo + hi)})) {
        res.type.violation = true;
        res.type.detail = fmt("graphs %zu and %zu touch but enclose a gap near local s = %g", i + 1, i + 2, xm);
        return res;
      }
    }
  }
  res.conclusive = true;
  res.type.kind = ConeKind::ST3;
  return res;
}

ConeType classify_with_ladder(const PolyRegion& m, const BoundaryFeatures& bf, Vec2 x, Vec2 v, double r, double u,
                              double snap_tol) {
  if (!(r > 0.0) || !(u > 0.0)) throw Error(Errc::out_of_domain, "cone scale r and u must be positive");
  const Vec2 apex = snap_to_boundary(bf, x, snap_tol);
  const Isometry iso = make_isometry(apex, v);
  const LocalBoundary local = to_local(bf, iso.inverse());
  ConeType last;
  for (int level = 0; level <= kLadderSteps; ++level) {
    ScaleResult res = classify_at_scale(m, iso, local, std::ldexp(r, -level), u);
    res.type.ladder_level = level;
    res.type.apex = apex;
    res.type.direction = v;
    if (res.conclusive) return res.type;
    last = std::move(res.type);
  }
  last.kind = ConeKind::inconclusive;
  return last;
}

}  // namespace

std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::T1: return "T1";
    case ConeKind::T2: return "T2";
    case ConeKind::T3: return "T3";
    case ConeKind::T4: return "T4";
    case ConeKind::T5: return "T5";
    case ConeKind::ST1: return "ST1";
    case ConeKind::ST2: return "ST2";
    case ConeKind::ST3: return "ST3";
    case ConeKind::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::certified: return "certified";
    case VerdictStatus::refuted: return "refuted";
    case VerdictStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

ConeType classify_point(const PolyRegion& m, Vec2 x, Vec2 v, double r, double u, double snap_tol) {
  return classify_with_ladder(m, boundary_features(m), x, v, r, u, snap_tol);
}

ConeType classify_point(const Scene& scene, Vec2 x, Vec2 v, double r, double u) {
  return classify_point(union_region(scene), x, v, r, u, snap_tolerance(scene));
}

ConeType classify_piece_point(const Piece& piece, Vec2 x, Vec2 v, double r, double u) {
  const PolyRegion m = polygonize(piece);
  const double tol = std::holds_alternative<DiskShape>(piece.shape) ? std::max(kTau, piece.tol) : kTau;
  ConeType t = classify_point(m, x, v, r, u, tol);
  switch (t.kind) {
    case ConeKind::ST1: t.kind = ConeKind::T1; return t;
    case ConeKind::ST2: t.kind = ConeKind::T2; return t;
    case ConeKind::ST3: break;
    default: return t;
  }
  const Isometry iso = make_isometry(t.apex, v);
  const auto inside = [&](double s, double w) { return in_closed_area(m, iso.apply({s, w})); };
  const double xm = 0.5 * t.r;
  const double floor = -2.0 * t.u * xm, ceil = 2.0 * t.u * xm;
  const auto& fs = t.witnesses;
  if (fs.size() == 1) {
    const double y = fs[0](xm);
    const bool below = inside(xm, 0.5 * (y + floor)), above = inside(xm, 0.5 * (y + ceil));
    if (below && !above) {
      t.kind = ConeKind::T3;
    } else if (above && !below) {
      t.kind = ConeKind::T4;
    } else if (!above && !below) {
      t.kind = ConeKind::T5;
      t.witnesses = {fs[0], fs[0]};
    } else {
      t.kind = ConeKind::inconclusive;
      t.detail = "set on both sides of a boundary graph";
    }
    return t;
  }
  if (fs.size() == 2) {
    const double lo = fs[0](xm), hi = fs[1](xm);
    const bool between = inside(xm, 0.5 * (lo + hi));
    const bool outside = inside(xm, 0.5 * (lo + floor)) || inside(xm, 0.5 * (hi + ceil));
    if (between && !outside) {
      t.kind = ConeKind::T5;
      return t;
    }
  }
  t.kind = ConeKind::inconclusive;
  t.detail = fmt("%zu boundary graphs do not bound a single slab", fs.size());
  return t;
}

namespace {

ExceptionalDirections exceptional_from(const BoundaryFeatures& bf, Vec2 x, double snap_tol) {
  ExceptionalDirections out;
  out.apex = snap_to_boundary(bf, x, snap_tol);
  const Vec2 apex = out.apex;
  const double tol = kTau * (1.0 + norm(apex));

  std::vector<Vec2> rays;
  double reach = std::numeric_limits<double>::infinity();
  const auto add_ray = [&](Vec2 to) {
    const double len = dist(apex, to);
    if (len <= tol) return;
    rays.push_back((1.0 / len) * (to - apex));
    reach = std::min(reach, len);
  };
  for (const auto& s : bf.segments) {
    if (dist(s.a, apex) <= tol) {
      add_ray(s.b);
    } else if (dist(s.b, apex) <= tol) {
      add_ray(s.a);
    } else if (dist_to_segment(apex, s.a, s.b) <= tol) {
      add_ray(s.a);
      add_ray(s.b);
    } else {
      reach = std::min(reach, dist_to_segment(apex, s.a, s.b));
    }
  }
  for (Vec2 p : bf.points)
    if (dist(p, apex) > tol) reach = std::min(reach, dist(p, apex));
  if (!std::isfinite(reach)) reach = 1.0;
  out.r = 0.5 * reach;

  std::sort(rays.begin(), rays.end(), [](Vec2 a, Vec2 b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
  for (Vec2 d : rays)
    if (out.directions.empty() || angle(out.directions.back(), d) > 1e-9) out.directions.push_back(d);
  if (out.directions.size() > 1 && angle(out.directions.front(), out.directions.back()) <= 1e-9)
    out.directions.pop_back();

  double gap = 2.0 * kPi;
  const std::size_t k = out.directions.size();
  if (k > 1)
    for (std::size_t i = 0; i < k; ++i) {
      double g = signed_angle(out.directions[i], out.directions[(i + 1) % k]);
      if (g <= 0.0) g += 2.0 * kPi;
      gap = std::min(gap, g);
    }
  out.u = std::min(0.5, 0.5 * std::tan(std::min(gap, kPi) / 3.0));
  out.separation_ok = k <= 1 || 2.0 * std::atan(2.0 * out.u) < gap;

  // Covering: sample every boundary feature near x.
  std::vector<Isometry> frames;
  for (Vec2 d : out.directions) frames.push_back(make_isometry(apex, d).inverse());
  const auto covered = [&](Vec2 p) {
    if (dist(p, apex) <= tol || dist(p, apex) >= 0.5 * out.r) return true;
    for (const auto& inv : frames)
      if (in_cone(inv.apply(p), out.r, out.u, 1e-12 * (1.0 + out.r))) return true;
    return false;
  };
  out.covering_ok = true;
  for (const auto& s : bf.segments) {
    if (dist_to_segment(apex, s.a, s.b) >= 0.5 * out.r) continue;
    for (int i = 0; i <= 32 && out.covering_ok; ++i) out.covering_ok = covered(s.a + (i / 32.0) * (s.b - s.a));
  }
  for (Vec2 p : bf.points) out.covering_ok = out.covering_ok && covered(p);
  return out;
}

}  // namespace

ExceptionalDirections exceptional_directions(const PolyRegion& m, Vec2 x, double snap_tol) {
  return exceptional_from(boundary_features(m), x, snap_tol);
}

ExceptionalDirections exceptional_directions(const Scene& scene, Vec2 x) {
  return exceptional_directions(union_region(scene), x, snap_tolerance(scene));
}

UWDCVerdict uwdc_verdict(const Scene& scene) {
  UWDCVerdict out;
  bool refuted = false;
  PolyRegion m;
  try {
    m = union_region(scene);
    out.complement_count = complement_count(m);
  } catch (const Error& e) {
    out.failures.push_back(std::string("union: ") + e.what());
    return out;
  }
  const BoundaryFeatures bf = boundary_features(m);

  // (B): every boundary loop splits into 1-Lipschitz DC graphs; bare
  // boundary segments are graphs on their own.
  double covered_length = 0.0;
  const auto certify = [&](const Polyline& curve, Vec2 dir) {
    const DcCertificate cert = dc_certify(curve, dir, 1.0, turn(curve));
    if (!cert.ok) {
      out.failures.push_back("boundary piece not certified: " + cert.reason);
      return;
    }
    for (std::size_t e = 0; e < curve.edge_count(); ++e) covered_length += curve.edge(e).length();
    out.boundary_graphs.push_back({curve, dir, 1.0, cert.turn});
  };
  const auto certify_ring = [&](const Ring& ring) {
    try {
      for (auto& piece : decompose_one_lipschitz(Polyline{ring, true})) certify(piece.curve, piece.direction);
    } catch (const Error& e) {
      out.failures.push_back(std::string("boundary loop: ") + e.what());
    }
  };
  for (const auto& poly : m.polygons) {
    certify_ring(poly.outer);
    for (const auto& h : poly.holes) certify_ring(h);
  }
  std::size_t ring_edges = 0;
  for (const auto& poly : m.polygons) {
    ring_edges += poly.outer.size();
    for (const auto& h : poly.holes) ring_edges += h.size();
  }
  for (std::size_t i = ring_edges; i < bf.segments.size(); ++i) {
    const Segment2& s = bf.segments[i];
    certify(Polyline{{s.a, s.b}, false}, perp(normalized(s.b - s.a)));
  }
  out.isolated_points = bf.points.size();
  double boundary_length = 0.0;
  for (const auto& s : bf.segments) boundary_length += s.length();
  if (std::abs(covered_length - boundary_length) > 1e-9 * (1.0 + boundary_length))
    out.failures.push_back(fmt("certified graphs cover length %.12g of %.12g", covered_length, boundary_length));

  // (C), sampled: exceptional directions must type ST3, the gaps between them ST1 or ST2.
  std::vector<Vec2> samples;
  for (const auto& s : bf.segments) {
    samples.push_back(s.a);
    samples.push_back(0.5 * (s.a + s.b));
  }
  for (Vec2 p : bf.points) samples.push_back(p);
  constexpr std::size_t kMaxSamples = 32;
  const std::size_t stride = std::max<std::size_t>(1, (samples.size() + kMaxSamples - 1) / kMaxSamples);
  for (std::size_t i = 0; i < samples.size(); i += stride) {
    ++out.points_checked;
    const Vec2 x = samples[i];
    try {
      const ExceptionalDirections ed = exceptional_from(bf, x, kTau);
      if (!ed.covering_ok || !ed.separation_ok)
        out.failures.push_back(fmt("(%g, %g): covering or separation fails", x.x, x.y));
      std::vector<Vec2> gaps;
      const std::size_t k = ed.directions.size();
      if (k == 0) gaps.push_back({1.0, 0.0});
      for (std::size_t j = 0; j < k; ++j) {
        const Vec2 a = ed.directions[j], b = ed.directions[(j + 1) % k];
        double g = signed_angle(a, b);
        if (g <= 0.0) g += 2.0 * kPi;
        gaps.push_back(rotate(a, 0.5 * g));
      }
      for (Vec2 d : ed.directions) {
        const ConeType t = classify_with_ladder(m, bf, ed.apex, d, ed.r, ed.u, kTau);
        if (t.kind == ConeKind::ST3) continue;
        if (t.violation) refuted = true;
        out.failures.push_back(fmt("(%g, %g) along (%g, %g): expected ST3, got %s: %s", x.x, x.y, d.x, d.y,
                                   std::string(to_string(t.kind)).c_str(), t.detail.c_str()));
      }
      for (Vec2 d : gaps) {
        const ConeType t = classify_with_ladder(m, bf, ed.apex, d, ed.r, ed.u, kTau);
        if (t.kind == ConeKind::ST1 || t.kind == ConeKind::ST2) continue;
        out.failures.push_back(fmt("(%g, %g) along (%g, %g): expected ST1 or ST2, got %s", x.x, x.y, d.x, d.y,
                                   std::string(to_string(t.kind)).c_str()));
      }
    } catch (const Error& e) {
      out.failures.push_back(fmt("(%g, %g): %s", x.x, x.y, e.what()));
    }
  }
  if (refuted) out.status = VerdictStatus::refuted;
  else out.status = out.failures.empty() ? VerdictStatus::certified : VerdictStatus::inconclusive;
  return out;
}

namespace {

void check_aura_data(const DCFun& g, const DCFun& h, double lipschitz) {
  if (g.lo() != h.lo() || g.hi() != h.hi()) throw Error(Errc::domain_mismatch, "g and h need the same domain");
  if (std::abs(g.lo()) > kTau) throw Error(Errc::bad_bounds, "the slab must sit over [0, a]");
  std::vector<double> xs = g.breakpoints();
  xs.insert(xs.end(), h.breakpoints().begin(), h.breakpoints().end());
  for (double x : xs)
    if (g(x) < h(x) - kTau) throw Error(Errc::bad_bounds, fmt("g < h at x = %g", x));
  const double need = std::max(lipschitz_constant(g), lipschitz_constant(h));
  if (lipschitz < need - kTau) throw Error(Errc::bad_bounds, fmt("L = %g is below the Lipschitz constant %g", lipschitz, need));
}

double extended(const DCFun& f, double x) { return f(std::clamp(x, f.lo(), f.hi())); }

// Clarke subdifferential of the constant extension at x.
SubdiffInterval extended_subdiff(const DCFun& f, double x) {
  if (x < f.lo() || x > f.hi()) return {0.0, 0.0};
  if (x == f.lo()) {
    const double d = f.right_derivative(x);
    return {std::min(0.0, d), std::max(0.0, d)};
  }
  if (x == f.hi()) {
    const double d = f.left_derivative(x);
    return {std::min(0.0, d), std::max(0.0, d)};
  }
  return clarke_subdiff(f, x);
}

// Distance from the origin to the convex hull of a small point set.
double min_norm_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return norm(pts[0]);
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[(i + 1) % hull.size()] - hull[i], Vec2{} - hull[i]) < 0.0) inside = false;
    if (inside) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i)
    best = std::min(best, dist_to_segment({}, hull[i], hull[(i + 1) % hull.size()]));
  return best;
}

}  // namespace

namespace {

double aura_value(const DCFun& g, const DCFun& h, double lipschitz, Vec2 p) {
  const double a = g.hi();
  const double f_term = 2.0 * lipschitz * std::max({0.0, p.x - a, -p.x});
  const double g_term = std::max({0.0, p.y - extended(g, p.x), extended(h, p.x) - p.y});
  return f_term + g_term;
}

}  // namespace

double aura_eval(const DCFun& g, const DCFun& h, double lipschitz, Vec2 p) {
  check_aura_data(g, h, lipschitz);
  return aura_value(g, h, lipschitz, p);
}

double aura_min_subgradient(const DCFun& g, const DCFun& h, double lipschitz, Vec2 p) {
  const double a = g.hi();
  const double eps = 1e-12 * (1.0 + std::abs(p.x) + std::abs(p.y));
  // Active pieces of F = 2L max(0, x - a, -x).
  const std::array<double, 3> f_vals{0.0, p.x - a, -p.x};
  const std::array<double, 3> f_grad{0.0, 2.0 * lipschitz, -2.0 * lipschitz};
  const double f_max = *std::max_element(f_vals.begin(), f_vals.end());
  std::vector<double> f_active;
  for (std::size_t i = 0; i < 3; ++i)
    if (f_vals[i] >= f_max - eps) f_active.push_back(f_grad[i]);
  // Active pieces of G = max(0, y - g~(x), h~(x) - y); each derivative is an interval.
  const double gy = p.y - extended(g, p.x), hy = extended(h, p.x) - p.y;
  const double g_max = std::max({0.0, gy, hy});
  std::vector<Vec2> g_active;
  if (g_max <= eps) g_active.push_back({});
  if (gy >= g_max - eps) {
    const SubdiffInterval d = extended_subdiff(g, p.x);
    g_active.push_back({-d.lo, 1.0});
    g_active.push_back({-d.hi, 1.0});
  }
  if (hy >= g_max - eps) {
    const SubdiffInterval d = extended_subdiff(h, p.x);
    g_active.push_back({d.lo, -1.0});
    g_active.push_back({d.hi, -1.0});
  }
  std::vector<Vec2> sums;
  for (double fx : f_active)
    for (Vec2 gv : g_active) sums.push_back({fx + gv.x, gv.y});
  return min_norm_hull(std::move(sums));
}

WeakRegularReport weak_regular_check(const DCFun& g, const DCFun& h, double lipschitz, double band, int resolution) {
  check_aura_data(g, h, lipschitz);
  if (!(band > 0.0) || resolution < 2) throw Error(Errc::out_of_domain, "band and resolution must be positive");
  WeakRegularReport rep;
  rep.bound = std::min(1.0, lipschitz);
  rep.min_norm = std::numeric_limits<double>::infinity();
  const double a = g.hi();
  double top = -std::numeric_limits<double>::infinity(), bottom = std::numeric_limits<double>::infinity();
  for (double v : g.values()) top = std::max(top, v);
  for (double v : h.values()) bottom = std::min(bottom, v);
  const double margin_x = lipschitz > 0.0 ? band / (2.0 * lipschitz) : band;
  const double x0 = -1.25 * margin_x, x1 = a + 1.25 * margin_x;
  const double y0 = bottom - 1.25 * band, y1 = top + 1.25 * band;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      const Vec2 p{x0 + (x1 - x0) * i / resolution, y0 + (y1 - y0) * j / resolution};
      const double hv = aura_value(g, h, lipschitz, p);
      if (!(hv > 0.0 && hv <= band)) continue;
      ++rep.samples;
      const double n = aura_min_subgradient(g, h, lipschitz, p);
      if (n < rep.min_norm) rep.min_norm = n, rep.worst = p;
    }
  }
  rep.ok = rep.samples > 0 && rep.min_norm >= rep.bound - kTau;
  return rep;
}

}  // namespace uwdc
