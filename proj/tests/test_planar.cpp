#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uwdc/error.hpp"
#include "uwdc/planar.hpp"

using namespace uwdc;
using namespace testing;

namespace {

Polyline ring_polyline(const Ring& r) { return Polyline{r, true}; }

/// Open arc of a circle through n + 1 vertices.
Polyline arc(double radius, double from, double to, int n) {
  Polyline p;
  for (int i = 0; i <= n; ++i) p.vertices.push_back(radius * unit_from_angle(from + (to - from) * i / n));
  return p;
}

/// Slope +-1 teeth: `changes` direction changes of a quarter turn each.
Polyline zigzag(int changes) {
  Polyline p;
  for (int i = 0; i <= changes + 1; ++i) p.vertices.push_back({double(i), (i % 2) ? 1.0 : 0.0});
  return p;
}

}  // namespace

TEST_CASE("isometry apply and inverse") {
  const Isometry id = make_isometry({0, 0}, {1, 0});
  CHECK(id.apply({0.3, -2.0}) == Vec2{0.3, -2.0});
  const Isometry g = make_isometry({1, 2}, {0, 1});
  const Vec2 q = g.apply({1, 0});
  CHECK(q.x == doctest::Approx(1.0));
  CHECK(q.y == doctest::Approx(3.0));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Isometry h = make_isometry({uni(rng, -5, 5), uni(rng, -5, 5)}, unit_from_angle(uni(rng, 0, 2 * kPi)));
    const Vec2 p{uni(rng, -5, 5), uni(rng, -5, 5)};
    CHECK(dist(h.inverse().apply(h.apply(p)), p) < 1e-12);
  }
  CHECK_THROWS_AS(make_isometry({0, 0}, {2, 0}), Error);
}

TEST_CASE("angle is arccos of the dot product") {
  CHECK(angle({1, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(angle({1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(angle({1, 0}, {-1, 0}) == doctest::Approx(kPi));
  CHECK_THROWS_AS(angle({1, 0}, {0, 2}), Error);
}

TEST_CASE("hausdorff") {
  const std::vector<Vec2> a{{0, 0}}, b{{3, 4}};
  CHECK(hausdorff(a, b) == doctest::Approx(5.0));
  CHECK(hausdorff(a, a) == 0.0);
  const std::vector<Vec2> none;
  CHECK_THROWS_AS(hausdorff(none, a), Error);

  const Polyline sq = ring_polyline(rect_ring({0, 0}, {1, 1}));
  Polyline shifted = sq;
  for (Vec2& v : shifted.vertices) v.x += 0.1;
  // Oracle: brute force over densely sampled boundary points.
  const auto da = sq.densified(1e-3), db = shifted.densified(1e-3);
  const double brute = hausdorff(da, db);
  CHECK(brute == doctest::Approx(0.1).epsilon(1e-2));
  CHECK(std::abs(hausdorff(sq, shifted, 1e-3) - 0.1) <= 1e-3);
}

TEST_CASE("is_lipschitz_graph") {
  CHECK(is_lipschitz_graph(Polyline{{{0, 0}, {1, 0}}}, {0, 1}, 1.0).ok);
  const auto vert = is_lipschitz_graph(Polyline{{{0, 0}, {0, 1}}}, {0, 1}, 5.0);
  CHECK_FALSE(vert.ok);
  CHECK(vert.violation.has_value());
  // Slope exactly 1 sits on the boundary |(A - B).v| = |A - B| / sqrt(2).
  const auto diag = is_lipschitz_graph(Polyline{{{0, 0}, {1, 1}}}, {0, 1}, 1.0);
  CHECK(diag.ok);
  CHECK_FALSE(is_lipschitz_graph(Polyline{{{0, 0}, {1, 1.001}}}, {0, 1}, 1.0).ok);
}

TEST_CASE("turn and signed_turn") {
  CHECK(turn(Polyline{{{0, 0}, {1, 0}, {2, 0}}}) == doctest::Approx(0.0));
  CHECK(turn(Polyline{{{0, 0}, {1, 0}, {1, 1}}}) == doctest::Approx(kPi / 2));
  CHECK(signed_turn(ring_polyline(regular_ngon({0, 0}, 1, 7))) == doctest::Approx(2 * kPi));
  CHECK(signed_turn(ring_polyline(reversed(regular_ngon({0, 0}, 1, 7)))) == doctest::Approx(-2 * kPi));
  CHECK_THROWS_AS(turn(Polyline{{{0, 0}, {0, 0}, {1, 0}}}), Error);
}

TEST_CASE("decompose_one_lipschitz") {
  const auto sq = decompose_one_lipschitz(ring_polyline(rect_ring({0, 0}, {1, 1})));
  CHECK(sq.size() == 4);
  for (const auto& piece : sq) CHECK(piece.curve.vertices.size() == 2);

  const auto tri = decompose_one_lipschitz(ring_polyline({{0, 0}, {1, 0}, {0.3, 0.8}}));
  CHECK(tri.size() <= 3);

  const auto big = decompose_one_lipschitz(ring_polyline(regular_ngon({0, 0}, 1, 64)));
  CHECK(big.size() <= 5);

  CHECK_THROWS_AS(decompose_one_lipschitz(Polyline{{{0, 0}, {1, 0}, {1, 1}}, false}), Error);
  CHECK_THROWS_AS(decompose_one_lipschitz(ring_polyline({{0, 0}, {1, 1}, {1, 0}, {0, 1}})), Error);
}

TEST_CASE("dc_certify") {
  SUBCASE("semicircle") {
    // 64 chords of a half circle turn by pi (1 - 1/64); 512 chords get within 0.01 of pi.
    const auto c64 = dc_certify(arc(1.0, kPi, 0.0, 64), {0, 1}, 1e6, 10.0);
    CHECK(c64.turn == doctest::Approx(kPi * 63.0 / 64.0).epsilon(1e-12));
    const auto c512 = dc_certify(arc(1.0, kPi, 0.0, 512), {0, 1}, 1e6, 10.0);
    CHECK(std::abs(c512.turn - kPi) <= 0.01);
    CHECK(c512.ok);
  }
  SUBCASE("segment") {
    const auto c = dc_certify(Polyline{{{0, 0}, {2, 1}}}, {0, 1}, 1.0, 0.0);
    CHECK(c.ok);
    CHECK(c.turn == 0.0);
  }
  SUBCASE("zigzag") {
    const Polyline z = zigzag(200);
    CHECK(turn(z) == doctest::Approx(100 * kPi));
    CHECK(dc_certify(z, {0, 1}, 1.0, 100 * kPi).ok);
    CHECK(dc_certify(z, {0, 1}, 1.0, 101 * kPi).ok);
    const auto short_k = dc_certify(z, {0, 1}, 1.0, 99.9 * kPi);
    CHECK_FALSE(short_k.ok);
    CHECK_FALSE(short_k.reason.empty());
    CHECK_FALSE(dc_certify(z, {0, 1}, 0.9, 1000.0).ok);
  }
}

TEST_CASE("realize") {
  const DCFun abs_fn = DCFun::from_pl(std::vector<double>{-1, 0, 1}, std::vector<double>{1, 0, 1});
  const Polyline p = realize(EmbeddedGraph{{0, 1}, abs_fn}, 1e-3);
  CHECK(p.vertices.size() == 3);
  const Polyline flat = realize(EmbeddedGraph{{0, 1}, DCFun::constant(-1, 1, 0)}, 1e-3);
  CHECK(flat.vertices.size() == 2);

  const double tol = 1e-4;
  const DCFun upper = sample_function([](double t) { return std::sqrt(std::max(0.0, 1 - t * t)); }, -1, 1, tol);
  const Polyline half = realize(EmbeddedGraph{{0, 1}, upper}, tol);
  // Oracle: distance of every polyline point to the unit circle, and of every circle point to the polyline.
  double worst = 0.0;
  for (Vec2 q : half.densified(1e-3)) worst = std::max(worst, std::abs(norm(q) - 1.0));
  CHECK(worst <= tol * 1.01);
  const Polyline circle = arc(1.0, 0.0, kPi, 4000);
  CHECK(hausdorff(half, circle, tol / 4) <= 2 * tol);
}

TEST_CASE("property: graph round trip and decomposition soundness") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const DCFun f = random_pl(rng, -1, 1, 8);
    const Vec2 v = unit_from_angle(uni(rng, 0, 2 * kPi));
    const Polyline p = realize(EmbeddedGraph{v, f}, 1e-3);
    CHECK(is_lipschitz_graph(p, v, lipschitz_constant(f) * (1 + 1e-9)).ok);

    const Ring ring = random_convex(rng, {0, 0}, 1.0, 5 + trial);
    for (const auto& piece : decompose_one_lipschitz(ring_polyline(ring)))
      CHECK(is_lipschitz_graph(piece.curve, piece.direction, 1.0).ok);
  }
}

TEST_CASE("property: turn additivity and isometry invariance") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    Polyline p;
    Vec2 at{0, 0};
    for (int i = 0; i < 12; ++i) {
      p.vertices.push_back(at);
      at = at + uni(rng, 0.2, 1.0) * unit_from_angle(uni(rng, 0, 2 * kPi));
    }
    const std::size_t k = 1 + trial % 10;
    const Polyline head{{p.vertices.begin(), p.vertices.begin() + k + 1}};
    const Polyline tail{{p.vertices.begin() + k, p.vertices.end()}};
    const Vec2 d0 = normalized(p.vertices[k] - p.vertices[k - 1]);
    const Vec2 d1 = normalized(p.vertices[k + 1] - p.vertices[k]);
    const double split = (head.vertices.size() > 2 ? turn(head) : 0.0) + turn(tail) + angle(d0, d1);
    CHECK(turn(p) == doctest::Approx(split).epsilon(1e-12));

    const Isometry g = make_isometry({uni(rng, -3, 3), uni(rng, -3, 3)}, unit_from_angle(uni(rng, 0, 2 * kPi)));
    Polyline q = p;
    for (Vec2& x : q.vertices) x = g.apply(x);
    CHECK(std::abs(turn(q) - turn(p)) <= 1e-9);
    Polyline r = tail;
    for (Vec2& x : r.vertices) x = g.apply(x);
    CHECK(std::abs(hausdorff(q, r, 1e-2) - hausdorff(p, tail, 1e-2)) <= 2e-2);
    const Vec2 v{0, 1};
    CHECK(is_lipschitz_graph(p, v, 2.0).ok == is_lipschitz_graph(q, g.apply_linear(v), 2.0).ok);
  }
}

TEST_CASE("property: hausdorff of unions is bounded by the worst member") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> a_all, b_all;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      std::vector<Vec2> a, b;
      for (int j = 0; j < 6; ++j) {
        const Vec2 p{uni(rng, -2, 2), uni(rng, -2, 2)};
        a.push_back(p);
        b.push_back(p + Vec2{uni(rng, -0.1, 0.1), uni(rng, -0.1, 0.1)});
      }
      worst = std::max(worst, hausdorff(a, b));
      a_all.insert(a_all.end(), a.begin(), a.end());
      b_all.insert(b_all.end(), b.begin(), b.end());
    }
    CHECK(hausdorff(a_all, b_all) <= worst + 1e-12);
  }
}
