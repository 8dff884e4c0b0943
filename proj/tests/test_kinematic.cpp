#include <doctest.h>

#include <array>
#include <random>

#include "support.hpp"
#include "uwdc/curvature.hpp"
#include "uwdc/error.hpp"
#include "uwdc/kinematic.hpp"

using namespace uwdc;
using namespace testing;

namespace {

Scene disk_scene(Vec2 c = {0, 0}) { return make_scene({make_disk("d", c, 1.0, 1e-3)}); }
Scene square_scene(Vec2 lo = {0, 0}) { return make_scene({make_rect("sq", lo, lo + Vec2{1, 1})}); }

KinematicOptions opts(std::size_t n, std::uint64_t seed) {
  KinematicOptions o;
  o.samples = n;
  o.seed = seed;
  o.threads = 1;
  return o;
}

bool within(double a, double b, double se, double k = 4.0) { return std::abs(a - b) <= k * se; }

}  // namespace

TEST_CASE("sample_motion") {
  const Rect w{{-1, 2}, {3, 4}};
  std::mt19937_64 a(99), b(99);
  const Motion ma = sample_motion(a, w), mb = sample_motion(b, w);
  CHECK(ma.theta == mb.theta);
  CHECK(ma.t == mb.t);

  // Bit-exact uniform01: the top 53 bits of the first draw.
  std::mt19937_64 raw(5), via(5);
  CHECK(uniform01(via) == static_cast<double>(raw() >> 11) * 0x1.0p-53);

  std::mt19937_64 rng(7);
  const int n = 1000000;
  double sx = 0, sy = 0, sxx = 0, syy = 0;
  std::array<int, 16> bins{};
  for (int i = 0; i < n; ++i) {
    const Motion m = sample_motion(rng, w);
    REQUIRE(w.contains(m.t));
    REQUIRE(m.theta >= 0.0);
    REQUIRE(m.theta < 2 * kPi);
    sx += m.t.x;
    sy += m.t.y;
    sxx += m.t.x * m.t.x;
    syy += m.t.y * m.t.y;
    ++bins[static_cast<int>(m.theta / (2 * kPi) * 16)];
  }
  const double mx = sx / n, my = sy / n;
  const double se_x = std::sqrt((sxx / n - mx * mx) / n), se_y = std::sqrt((syy / n - my * my) / n);
  CHECK(within(mx, w.center().x, se_x, 3.0));
  CHECK(within(my, w.center().y, se_y, 3.0));
  double chi2 = 0;
  for (int c : bins) chi2 += (c - n / 16.0) * (c - n / 16.0) / (n / 16.0);
  // 15 degrees of freedom; 37.7 is the 0.1% critical value.
  CHECK(chi2 < 37.7);
}

TEST_CASE("Motion::isometry rotates then translates") {
  const Motion m{kPi / 2, {1, 2}};
  const Vec2 p = m.isometry().apply({1, 0});
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(3.0));
}

TEST_CASE("kinematic_lhs closed forms") {
  SUBCASE("disk/disk k=0") {
    const MCEstimate e = kinematic_lhs(disk_scene(), disk_scene(), 0, opts(20000, 1));
    // Oracle: chi(D n gD) = 1 iff |t| <= 2, so the integral is the area of a radius-2 disk.
    CHECK(within(e.value, 4 * kPi, e.std_error));
    CHECK(e.n_samples == 20000);
    CHECK(e.seed == 1);
    CHECK(e.rejected.size() < 20);
  }
  SUBCASE("square/square k=2") {
    const MCEstimate e = kinematic_lhs(square_scene(), square_scene(), 2, opts(20000, 2));
    CHECK(within(e.value, 1.0, e.std_error));
  }
  SUBCASE("window outside the support") {
    KinematicOptions o = opts(1000, 3);
    o.window = Rect{{50, 50}, {51, 51}};
    const MCEstimate e = kinematic_lhs(disk_scene(), disk_scene(), 0, o);
    CHECK(e.value == 0.0);
    o.window = Rect{{-1, -1}, {1, 1}};
    CHECK_THROWS_AS(kinematic_lhs(disk_scene(), disk_scene(), 0, o), Error);
  }
  CHECK_THROWS_AS(kinematic_lhs(disk_scene(), disk_scene(), 3, opts(10, 1)), Error);
}

TEST_CASE("kinematic_lhs is reproducible across worker counts") {
  KinematicOptions a = opts(5000, 11), b = opts(5000, 11);
  a.chunk = b.chunk = 512;
  a.threads = 1;
  b.threads = 4;
  const MCEstimate ea = kinematic_lhs(square_scene(), disk_scene(), 1, a);
  const MCEstimate eb = kinematic_lhs(square_scene(), disk_scene(), 1, b);
  CHECK(ea.value == eb.value);
  CHECK(ea.std_error == eb.std_error);
  const MCEstimate ec = kinematic_lhs(square_scene(), disk_scene(), 1, opts(5000, 12));
  CHECK(ec.value != ea.value);
}

TEST_CASE("calibrate_gammas") {
  const GammaTable g = calibrate_gammas();
  // Oracle from disk pairs: 4 pi = pi + pi + g11 pi^2; int C1(D n gD) = 2 pi^2 = pi^2 (g12 + g21);
  // int area(D n gD) = pi^2 = g22 pi^2.
  CHECK(g(0, 2) == doctest::Approx(1.0));
  CHECK(g(2, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx((4 * kPi - 2 * kPi) / (kPi * kPi)));
  CHECK(g(1, 2) == doctest::Approx(1.0));
  CHECK(g(2, 1) == doctest::Approx(1.0));
  CHECK(g(1, 2) + g(2, 1) == doctest::Approx(2 * kPi * kPi / (kPi * kPi)));
  CHECK(g(2, 2) == doctest::Approx(1.0));
  for (int k = 0; k <= 2; ++k) CHECK_FALSE(g.systems[k].empty());
}

TEST_CASE("kinematic_verify") {
  SUBCASE("disk/disk every k") {
    for (int k = 0; k <= 2; ++k) {
      const KinematicReport r = kinematic_verify(disk_scene(), disk_scene(), k, opts(20000, 20 + k));
      CHECK(r.pass);
      CHECK(r.k == k);
    }
  }
  SUBCASE("disk/disk k=2 equals pi^2") {
    const KinematicReport r = kinematic_verify(disk_scene(), disk_scene(), 2, opts(20000, 30));
    const double a = curvature_scene(disk_scene(), 2);
    CHECK(r.rhs == doctest::Approx(a * a));
    // Oracle: the inscribed n-gon area (n/2) sin(2 pi / n) squared.
    const int n = disk_sides(1.0, 1e-3);
    const double ngon = 0.5 * n * std::sin(2 * kPi / n);
    CHECK(r.rhs == doctest::Approx(ngon * ngon).epsilon(1e-12));
  }
  SUBCASE("square/disk k=1") {
    const KinematicReport r = kinematic_verify(square_scene(), disk_scene(), 1, opts(20000, 31));
    CHECK(r.pass);
  }
  SUBCASE("square/triangle k=0") {
    const Scene tri = make_scene({make_polygon("tri", {{0, 0}, {1.5, 0}, {0.2, 1.1}})});
    const KinematicReport r = kinematic_verify(square_scene(), tri, 0, opts(20000, 32));
    CHECK(r.pass);
  }
  SUBCASE("comb vs square k=0") {
    const KinematicReport r = kinematic_verify(comb(2), square_scene(), 0, opts(8000, 33));
    CHECK(r.pass);
    CHECK(r.rejected * 1000 <= r.n);
  }
}

TEST_CASE("property: translation invariance and symmetry") {
  const Scene m = square_scene(), k = disk_scene();
  const MCEstimate base = kinematic_lhs(m, k, 0, opts(20000, 40));
  const MCEstimate moved = kinematic_lhs(square_scene({5, -3}), k, 0, opts(20000, 41));
  const MCEstimate swapped = kinematic_lhs(k, m, 0, opts(20000, 42));
  const double se1 = std::hypot(base.std_error, moved.std_error), se2 = std::hypot(base.std_error, swapped.std_error);
  CHECK(within(base.value, moved.value, se1));
  CHECK(within(base.value, swapped.value, se2));
}

TEST_CASE("property: k=2 reduces to the product of areas") {
  const Scene tri = make_scene({make_polygon("tri", {{0, 0}, {1.5, 0}, {0.2, 1.1}})});
  const MCEstimate e = kinematic_lhs(tri, disk_scene(), 2, opts(20000, 50));
  const double want = curvature_scene(tri, 2) * curvature_scene(disk_scene(), 2);
  CHECK(within(e.value, want, e.std_error, 3.0));
}
