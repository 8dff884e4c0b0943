#pragma once

// Shared helpers for the test suites: random generators and small builders.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "uwdc/dc_fun.hpp"
#include "uwdc/region.hpp"
#include "uwdc/scene.hpp"

namespace testing {

using namespace uwdc;

inline constexpr double kPi = std::numbers::pi;

inline double uni(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

/// Random continuous PL function on [lo, hi] with `knots` interior breakpoints.
inline DCFun random_pl(std::mt19937_64& rng, double lo, double hi, int knots, double amp = 1.0) {
  std::vector<double> xs{lo, hi};
  for (int i = 0; i < knots; ++i) xs.push_back(uni(rng, lo, hi));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a < 1e-6; }), xs.end());
  if (xs.back() != hi) xs.back() = hi;
  std::vector<double> ys;
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(uni(rng, -amp, amp));
  return DCFun::from_pl(xs, ys);
}

/// Random convex polygon: sorted random angles on a jittered circle.
inline Ring random_convex(std::mt19937_64& rng, Vec2 c, double radius, int n) {
  std::vector<double> th;
  for (int i = 0; i < n; ++i) th.push_back(uni(rng, 0.0, 2 * kPi));
  std::sort(th.begin(), th.end());
  Ring ring;
  for (double t : th) ring.push_back(c + radius * unit_from_angle(t));
  // Drop near-duplicates so the ring stays strictly convex.
  Ring out;
  for (Vec2 p : ring)
    if (out.empty() || dist(out.back(), p) > 1e-3 * radius) out.push_back(p);
  if (out.size() > 3 && dist(out.front(), out.back()) < 1e-3 * radius) out.pop_back();
  return out;
}

inline Ring regular_ngon(Vec2 c, double radius, int n, double phase = 0.0) {
  Ring ring;
  for (int i = 0; i < n; ++i) ring.push_back(c + radius * unit_from_angle(phase + 2 * kPi * i / n));
  return ring;
}

inline Ring rect_ring(Vec2 lo, Vec2 hi) { return {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}; }

inline Ring reversed(Ring r) {
  std::reverse(r.begin(), r.end());
  return r;
}

/// Ladder with two horizontal bars and n + 1 vertical teeth: n holes.
inline Scene comb(int n) {
  std::vector<Piece> pieces;
  const double w = 0.2, gap = 1.0, len = 3.0;
  const double x1 = n * (gap + w) + w;
  // Bars overhang the outer teeth so no vertex touches another boundary.
  pieces.push_back(make_rect("bar_lo", {-0.1, 0.0}, {x1 + 0.1, w}));
  pieces.push_back(make_rect("bar_hi", {-0.1, len - w}, {x1 + 0.1, len}));
  for (int i = 0; i <= n; ++i) {
    const double x = i * (gap + w);
    pieces.push_back(make_rect("tooth" + std::to_string(i), {x, 0.1}, {x + w, len - 0.1}));
  }
  return make_scene(std::move(pieces));
}

/// Oracle: area of a simple ring by the trapezoid rule (independent of the shoelace form).
inline double trapezoid_area(const Ring& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vec2 a = r[i], b = r[(i + 1) % r.size()];
    s += (b.x - a.x) * (a.y + b.y);
  }
  return -0.5 * s;
}

/// Oracle: perimeter of a ring.
inline double perimeter(const Ring& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += dist(r[i], r[(i + 1) % r.size()]);
  return s;
}

/// Oracle: Sutherland-Hodgman clip of a polygon by a convex counterclockwise ring.
inline Ring clip_convex_oracle(Ring subject, const Ring& clip) {
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Vec2 a = clip[i], b = clip[(i + 1) % clip.size()];
    const auto side = [&](Vec2 p) { return cross(b - a, p - a); };
    Ring out;
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Vec2 p = subject[j], q = subject[(j + 1) % subject.size()];
      const double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) out.push_back(p + (sp / (sp - sq)) * (q - p));
    }
    subject = std::move(out);
  }
  return subject;
}

}  // namespace testing
