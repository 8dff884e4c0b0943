#include "uwdc/kinematic.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "uwdc/error.hpp"
#include "uwdc/region.hpp"

namespace uwdc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kStrata = 16;

struct Term {
  double sign = 1.0;
  PolyRegion region;
  Vec2 center;
  double radius = 0.0;
};

std::vector<Term> lattice_terms(const Scene& scene) {
  require_generic(scene);
  std::vector<Term> out;
  const auto regions = polygonized(scene);
  for_each_lattice_set(scene, regions, [&](IndexSet mask, const PolyRegion& r) {
    Term t;
    t.sign = std::popcount(mask) % 2 == 1 ? 1.0 : -1.0;
    const Rect b = r.bounds();
    t.center = b.center();
    for (Vec2 p : r.vertices()) t.radius = std::max(t.radius, dist(p, t.center));
    t.region = r;
    out.push_back(std::move(t));
  });
  return out;
}

bool contains(const Rect& outer, const Rect& inner) {
  return outer.lo.x <= inner.lo.x && outer.lo.y <= inner.lo.y && outer.hi.x >= inner.hi.x &&
         outer.hi.y >= inner.hi.y;
}

bool disjoint(const Rect& a, const Rect& b) {
  return a.hi.x < b.lo.x || b.hi.x < a.lo.x || a.hi.y < b.lo.y || b.hi.y < a.lo.y;
}

struct ChunkResult {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<Motion> rejected;
};

class Sampler {
 public:
  Sampler(std::vector<Term> m, std::vector<Term> k, int index) : m_(std::move(m)), k_(std::move(k)), index_(index) {}

  // C_index(M n gK) by inclusion-exclusion over both lattices; nullopt on a
  // tangential contact.
  std::optional<double> integrand(const Motion& g) const {
    const Isometry iso = g.isometry();
    double sum = 0.0;
    for (const Term& kt : k_) {
      const Vec2 c = iso.apply(kt.center);
      std::optional<PolyRegion> moved;
      for (const Term& mt : m_) {
        if (dist(c, mt.center) > kt.radius + mt.radius + kTau) continue;
        if (!moved) moved = transformed(kt.region, iso);
        bool degenerate = false;
        const PolyRegion r = intersect(mt.region, *moved, true, &degenerate);
        if (degenerate) return std::nullopt;
        if (r.empty()) continue;
        sum += mt.sign * kt.sign * measure(r);
      }
    }
    return sum;
  }

 private:
  double measure(const PolyRegion& r) const {
    // A simple ring has turning number one, so for pure area parts C0 is
    // outer rings minus holes; skips the angle sums on the hot path.
    if (index_ == 0 && !r.has_lower_dim()) {
      double c0 = 0.0;
      for (const auto& poly : r.polygons) c0 += 1.0 - static_cast<double>(poly.holes.size());
      return c0;
    }
    return curvature_region(r)[index_];
  }

  std::vector<Term> m_;
  std::vector<Term> k_;
  int index_;
};

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b, const std::string& what) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-12 * scale)
      throw Error(Errc::singular_calibration, what + ": calibration shapes do not determine the constants");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

Isometry Motion::isometry() const { return {t, {std::cos(theta), std::sin(theta)}}; }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Motion sample_motion(std::mt19937_64& rng, const Rect& window) {
  Motion g;
  g.theta = 2.0 * kPi * uniform01(rng);
  g.t.x = window.lo.x + (window.hi.x - window.lo.x) * uniform01(rng);
  g.t.y = window.lo.y + (window.hi.y - window.lo.y) * uniform01(rng);
  return g;
}

Rect support_window(const Scene& m, const Scene& k) {
  Rect box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
           {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const auto& r : polygonized(m)) {
    if (r.empty()) continue;
    const Rect b = r.bounds();
    box.lo = {std::min(box.lo.x, b.lo.x), std::min(box.lo.y, b.lo.y)};
    box.hi = {std::max(box.hi.x, b.hi.x), std::max(box.hi.y, b.hi.y)};
  }
  double reach = 0.0;
  for (const auto& r : polygonized(k))
    for (Vec2 p : r.vertices()) reach = std::max(reach, norm(p));
  const double margin = reach + 1e-6 * (1.0 + reach);
  return {{box.lo.x - margin, box.lo.y - margin}, {box.hi.x + margin, box.hi.y + margin}};
}

MCEstimate kinematic_lhs(const Scene& m, const Scene& k, int index, const KinematicOptions& opt) {
  if (index < 0 || index > 2) throw Error(Errc::out_of_domain, "curvature index must be 0, 1 or 2");
  if (opt.samples < 2 || opt.chunk == 0) throw Error(Errc::out_of_domain, "need at least 2 samples");
  MCEstimate est;
  est.seed = opt.seed;
  est.n_samples = opt.samples;

  const Rect support = support_window(m, k);
  Rect window = support;
  if (opt.window) {
    if (disjoint(*opt.window, support)) return est;
    if (!contains(*opt.window, support))
      throw Error(Errc::window_too_small, "sampling window does not contain every translation that meets M");
    window = *opt.window;
  }

  const Sampler sampler(lattice_terms(m), lattice_terms(k), index);
  const std::size_t chunks = (opt.samples + opt.chunk - 1) / opt.chunk;
  std::vector<ChunkResult> results(chunks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      auto rng = substream(opt.seed, c);
      ChunkResult& out = results[c];
      const std::size_t begin = c * opt.chunk, end = std::min(opt.samples, begin + opt.chunk);
      for (std::size_t i = begin; i < end; ++i) {
        const int stratum = static_cast<int>(i % kStrata);
        for (;;) {
          Motion g = sample_motion(rng, window);
          g.theta = 2.0 * kPi * (stratum + g.theta / (2.0 * kPi)) / kStrata;
          const auto v = sampler.integrand(g);
          if (!v) {
            out.rejected.push_back(g);
            continue;
          }
          out.sum += *v;
          out.sum_sq += *v * *v;
          break;
        }
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  double sum = 0.0, sum_sq = 0.0;
  for (auto& r : results) {
    sum += r.sum;
    sum_sq += r.sum_sq;
    est.rejected.insert(est.rejected.end(), r.rejected.begin(), r.rejected.end());
  }
  const double n = static_cast<double>(opt.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double w = window.area();
  est.value = w * mean;
  est.std_error = w * std::sqrt(var / n);
  return est;
}

GammaTable calibrate_gammas() {
  // Closed forms for convex bodies: the rotation-averaged Minkowski area gives
  // the k = 0 integrals, Fubini gives k = 1 (boundary length against area)
  // and k = 2 (area against area). C tables: disk r -> (1, pi r, pi r^2),
  // square a -> (1, 2a, a^2).
  struct Body {
    const char* name;
    std::array<double, 3> c;
  };
  const Body disk1{"disk(1)", {1.0, kPi, kPi}};
  const Body disk2{"disk(2)", {1.0, 2.0 * kPi, 4.0 * kPi}};
  const Body square1{"square(1)", {1.0, 2.0, 1.0}};
  const auto hit = [](const Body& a, const Body& b) {  // int chi(A n gB)
    const double mixed = 4.0 * a.c[1] * b.c[1] / (2.0 * kPi);
    return a.c[2] + b.c[2] + mixed;
  };
  const auto half_perimeter = [](const Body& a, const Body& b) { return a.c[1] * b.c[2] + a.c[2] * b.c[1]; };
  const auto area = [](const Body& a, const Body& b) { return a.c[2] * b.c[2]; };

  GammaTable table;
  const std::array<std::vector<std::pair<Body, Body>>, 3> pairs{
      std::vector<std::pair<Body, Body>>{{disk1, disk1}, {disk1, disk2}, {square1, disk1}},
      std::vector<std::pair<Body, Body>>{{disk1, disk1}, {square1, disk1}},
      std::vector<std::pair<Body, Body>>{{disk1, disk1}}};
  for (int k = 0; k <= 2; ++k) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& [x, y] : pairs[k]) {
      CalibrationRow row;
      row.label = std::string(x.name) + " vs " + y.name;
      for (int i = k; i <= 2; ++i) row.coefficients.push_back(x.c[i] * y.c[2 + k - i]);
      row.value = k == 0 ? hit(x, y) : (k == 1 ? half_perimeter(x, y) : area(x, y));
      a.push_back(row.coefficients);
      b.push_back(row.value);
      table.systems[k].push_back(std::move(row));
    }
    const auto g = solve(a, b, "k = " + std::to_string(k));
    for (int i = k; i <= 2; ++i) table.gamma[i][2 + k - i] = g[i - k];
  }
  return table;
}

double kinematic_rhs(const CurvatureTable& m, const CurvatureTable& k, int index, const GammaTable& gammas) {
  double s = 0.0;
  for (int i = index; i <= 2; ++i) s += gammas(i, 2 + index - i) * m[i] * k[2 + index - i];
  return s;
}

KinematicReport kinematic_verify(const Scene& m, const Scene& k, int index, const KinematicOptions& opt, double tol) {
  KinematicReport rep;
  rep.k = index;
  rep.gammas = calibrate_gammas();
  rep.rhs = kinematic_rhs(curvature_scene_table(m), curvature_scene_table(k), index, rep.gammas);
  const MCEstimate est = kinematic_lhs(m, k, index, opt);
  rep.lhs = est.value;
  rep.std_error = est.std_error;
  rep.n = est.n_samples;
  rep.seed = est.seed;
  rep.rejected = est.rejected.size();
  rep.pass = std::abs(rep.lhs - rep.rhs) <= std::max(tol, 4.0 * rep.std_error);
  return rep;
}

}  // namespace uwdc
