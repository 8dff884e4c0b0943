#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "support.hpp"
#include "uwdc/error.hpp"
#include "uwdc/planar.hpp"

using namespace uwdc;
using namespace testing;

namespace {

DCFun abs_fn() { return DCFun(ConvexPL({-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}), ConvexPL::zero(-1.0, 1.0)); }
DCFun ident() { return DCFun::affine(-1.0, 1.0, 1.0, 0.0); }

void check_convex_parts(const DCFun& f) {
  CHECK(f.g().is_convex(kDcTau));
  CHECK(f.h().is_convex(kDcTau));
  CHECK(f.g().breakpoints() == f.h().breakpoints());
}

}  // namespace

TEST_CASE("ConvexPL rejects non-convex data and out-of-domain evaluation") {
  CHECK_THROWS_AS(ConvexPL({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}), Error);
  const ConvexPL c({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0});
  CHECK(c(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(c(2.5), Error);
}

TEST_CASE("evaluation") {
  const DCFun sq = sample_function([](double x) { return x * x; }, -1.0, 1.0, 1e-6);
  CHECK(std::abs(sq(0.0)) <= 1e-6);
  CHECK(abs_fn()(0.5) == doctest::Approx(0.5));
  const DCFun cancel(ConvexPL::affine(-1, 1, 1, 0), ConvexPL::affine(-1, 1, 1, 0));
  CHECK(cancel(0.7) == 0.0);
}

TEST_CASE("add, negate, scale") {
  const DCFun z = add(abs_fn(), negate(abs_fn()));
  for (double x : {-1.0, -0.3, 0.0, 0.4, 1.0}) CHECK(z(x) == doctest::Approx(0.0));

  const DCFun n = negate(ident());
  CHECK(n(0.3) == doctest::Approx(-0.3));
  CHECK(n.g() == ident().h());
  CHECK(n.h() == ident().g());

  CHECK(scale(abs_fn(), 2.0)(0.5) == doctest::Approx(1.0));
}

TEST_CASE("max2 and min2") {
  const DCFun mx = max2(ident(), negate(ident()));
  const DCFun mn = min2(ident(), negate(ident()));
  for (double x : {-1.0, -0.5, 0.0, 0.25, 1.0}) {
    CHECK(mx(x) == doctest::Approx(std::abs(x)));
    CHECK(mn(x) == doctest::Approx(-std::abs(x)));
  }
  const DCFun f = add(abs_fn(), DCFun::affine(-1, 1, 0.3, 0.1));
  const DCFun ff = max2(f, f);
  for (double x : {-0.9, -0.1, 0.0, 0.6}) CHECK(ff(x) == doctest::Approx(f(x)));
  CHECK_THROWS_AS(max2(ident(), DCFun::affine(0, 1, 1, 0)), Error);
}

TEST_CASE("clarke_subdiff") {
  const SubdiffInterval a = clarke_subdiff(abs_fn(), 0.0);
  CHECK(a.lo == doctest::Approx(-1.0));
  CHECK(a.hi == doctest::Approx(1.0));
  const SubdiffInterval b = clarke_subdiff(abs_fn(), 0.5);
  CHECK(b.lo == doctest::Approx(1.0));
  CHECK(b.hi == doctest::Approx(1.0));
  const SubdiffInterval c = clarke_subdiff(negate(abs_fn()), 0.0);
  CHECK(c.lo == doctest::Approx(-1.0));
  CHECK(c.hi == doctest::Approx(1.0));
  const SubdiffInterval e = clarke_subdiff(abs_fn(), 1.0);
  CHECK(e.lo == doctest::Approx(1.0));
  CHECK(e.hi == doctest::Approx(1.0));
}

TEST_CASE("lipschitz_constant") {
  CHECK(lipschitz_constant(abs_fn()) == doctest::Approx(1.0));
  CHECK(lipschitz_constant(DCFun::affine(-1, 1, 3, 0)) == doctest::Approx(3.0));
  const DCFun m = max2(DCFun::affine(0, 2, 1, 0), DCFun::affine(0, 2, 2, -1));
  CHECK(lipschitz_constant(m) == doctest::Approx(2.0));
}

TEST_CASE("sorted_envelopes") {
  {
    const std::vector<DCFun> in{ident(), negate(ident())};
    const auto out = sorted_envelopes(in);
    REQUIRE(out.size() == 2);
    for (double x : {-1.0, -0.2, 0.0, 0.7}) {
      CHECK(out[0](x) == doctest::Approx(-std::abs(x)));
      CHECK(out[1](x) == doctest::Approx(std::abs(x)));
    }
  }
  {
    const std::vector<DCFun> in{DCFun::constant(0, 1, 1), DCFun::constant(0, 1, 0), DCFun::constant(0, 1, 2)};
    const auto out = sorted_envelopes(in);
    REQUIRE(out.size() == 3);
    CHECK(out[0](0.5) == doctest::Approx(0.0));
    CHECK(out[1](0.5) == doctest::Approx(1.0));
    CHECK(out[2](0.5) == doctest::Approx(2.0));
  }
  {
    const std::vector<DCFun> in{abs_fn()};
    const auto out = sorted_envelopes(in);
    REQUIRE(out.size() == 1);
    CHECK(out[0](0.3) == doctest::Approx(0.3));
  }
}

TEST_CASE("property: envelopes reproduce the sorted values") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<DCFun> fs;
    const int n = 2 + trial % 4;
    for (int i = 0; i < n; ++i) fs.push_back(random_pl(rng, -1.0, 1.0, 6));
    const auto env = sorted_envelopes(fs);
    REQUIRE(env.size() == fs.size());
    for (const DCFun& e : env) check_convex_parts(e);
    for (int s = 0; s < 1000; ++s) {
      const double x = uni(rng, -1.0, 1.0);
      std::vector<double> want;
      for (const DCFun& f : fs) want.push_back(f(x));
      std::sort(want.begin(), want.end());
      for (std::size_t i = 0; i < env.size(); ++i) REQUIRE(std::abs(env[i](x) - want[i]) <= 1e-9);
    }
  }
}

TEST_CASE("property: closure, duality and subdifferential bounds") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const DCFun a = random_pl(rng, -1.0, 1.0, 5);
    const DCFun b = random_pl(rng, -1.0, 1.0, 5);
    const DCFun s = add(a, b), mx = max2(a, b), mn = min2(a, b);
    check_convex_parts(s);
    check_convex_parts(mx);
    check_convex_parts(mn);
    const DCFun dual = negate(max2(negate(a), negate(b)));
    for (int k = 0; k < 50; ++k) {
      const double x = uni(rng, -0.99, 0.99);
      REQUIRE(std::abs(mn(x) - dual(x)) <= 1e-9);
      REQUIRE(std::abs(mx(x) - std::max(a(x), b(x))) <= 1e-9);
      REQUIRE(std::abs(s(x) - (a(x) + b(x))) <= 1e-9);
      const double delta = 1e-6;
      const auto& bp = a.breakpoints();
      const bool near_kink = std::any_of(bp.begin(), bp.end(), [&](double t) {
        return std::abs(t - x) > 0.0 && std::abs(t - x) < 2 * delta;
      });
      if (near_kink) continue;
      const SubdiffInterval d = clarke_subdiff(a, x);
      const double fwd = (a(x + delta) - a(x)) / delta;
      const double bwd = (a(x - delta) - a(x)) / -delta;
      // Rounding of g - h over a step of delta; the DC parts can be much
      // larger than f itself.
      const double mag = std::abs(a.g()(x)) + std::abs(a.h()(x)) + 1.0;
      const double slack = 1e-9 + 8 * std::numeric_limits<double>::epsilon() * mag / delta;
      CHECK(fwd >= d.lo - slack);
      CHECK(fwd <= d.hi + slack);
      CHECK(bwd >= d.lo - slack);
      CHECK(bwd <= d.hi + slack);
    }
  }
}
