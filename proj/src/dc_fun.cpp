#include "uwdc/dc_fun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uwdc/error.hpp"

namespace uwdc {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::not_unit: return "NotUnit";
    case Errc::degenerate_segment: return "DegenerateSegment";
    case Errc::not_simple: return "NotSimple";
    case Errc::not_closed: return "NotClosed";
    case Errc::not_convex: return "NotConvex";
    case Errc::invalid_region: return "InvalidRegion";
    case Errc::invalid_nesting: return "InvalidNesting";
    case Errc::degenerate_contact: return "DegenerateContact";
    case Errc::touching_halfplane: return "TouchingHalfplane";
    case Errc::not_boundary_point: return "NotBoundaryPoint";
    case Errc::bad_bounds: return "BadBounds";
    case Errc::window_too_small: return "WindowTooSmall";
    case Errc::singular_calibration: return "SingularCalibration";
    case Errc::schema: return "SchemaError";
  }
  return "Unknown";
}

namespace {

double grid_eps(double x) { return 1e-12 * (1.0 + std::abs(x)); }

bool same_domain(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::abs(a_lo - b_lo) <= grid_eps(a_lo) && std::abs(a_hi - b_hi) <= grid_eps(a_hi);
}

std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Sorts and removes near-duplicates, keeping the exact endpoints lo and hi.
std::vector<double> clean_grid(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size() + 2);
  out.push_back(lo);
  for (double x : xs) {
    if (x <= out.back() + grid_eps(out.back())) continue;
    if (x >= hi - grid_eps(hi)) break;
    out.push_back(x);
  }
  out.push_back(hi);
  return out;
}

double interp(double x0, double y0, double x1, double y1, double x) {
  if (x1 == x0) return y0;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

// ---------------------------------------------------------------- ConvexPL

ConvexPL::ConvexPL(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw Error(Errc::empty_input, "ConvexPL needs >= 2 breakpoints with matching values");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
      throw Error(Errc::out_of_domain, "non-finite ConvexPL data");
    if (i > 0 && !(xs_[i] > xs_[i - 1]))
      throw Error(Errc::out_of_domain, "ConvexPL breakpoints must increase strictly");
  }
  if (!is_convex(kDcTau)) throw Error(Errc::not_convex, "ConvexPL data is not convex");
}

ConvexPL ConvexPL::affine(double lo, double hi, double slope, double intercept) {
  return ConvexPL({lo, hi}, {intercept + slope * lo, intercept + slope * hi});
}

bool ConvexPL::is_convex(double tol) const {
  double scale = 1.0;
  for (double y : ys_) scale = std::max(scale, std::abs(y));
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    const double chord = interp(xs_[i - 1], ys_[i - 1], xs_[i + 1], ys_[i + 1], xs_[i]);
    if (ys_[i] > chord + tol * scale) return false;
  }
  return true;
}

double ConvexPL::slope(std::size_t seg) const {
  return (ys_[seg + 1] - ys_[seg]) / (xs_[seg + 1] - xs_[seg]);
}

double ConvexPL::operator()(double x) const {
  if (x < lo() - grid_eps(lo()) || x > hi() + grid_eps(hi()))
    throw Error(Errc::out_of_domain, "x = " + std::to_string(x) + " outside [" + std::to_string(lo()) + ", " +
                                         std::to_string(hi()) + "]");
  if (x <= lo()) return ys_.front();
  if (x >= hi()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
  return interp(xs_[k - 1], ys_[k - 1], xs_[k], ys_[k], x);
}

ConvexPL ConvexPL::resampled(std::span<const double> grid) const {
  ConvexPL out;
  out.xs_.assign(grid.begin(), grid.end());
  out.ys_.reserve(grid.size());
  for (double x : grid) out.ys_.push_back((*this)(x));
  return out;
}

ConvexPL sum_convex(const ConvexPL& a, const ConvexPL& b) {
  if (!same_domain(a.lo(), a.hi(), b.lo(), b.hi())) throw Error(Errc::domain_mismatch, "sum of convex functions");
  const auto grid = clean_grid(merge_grids(a.breakpoints(), b.breakpoints()), a.lo(), a.hi());
  std::vector<double> ys(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ys[i] = a(grid[i]) + b(grid[i]);
  return ConvexPL(grid, std::move(ys));
}

ConvexPL max_convex(const ConvexPL& a, const ConvexPL& b) {
  if (!same_domain(a.lo(), a.hi(), b.lo(), b.hi())) throw Error(Errc::domain_mismatch, "max of convex functions");
  auto grid = clean_grid(merge_grids(a.breakpoints(), b.breakpoints()), a.lo(), a.hi());
  std::vector<double> refined = grid;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double d0 = a(grid[i]) - b(grid[i]);
    const double d1 = a(grid[i + 1]) - b(grid[i + 1]);
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0))
      refined.push_back(grid[i] + (grid[i + 1] - grid[i]) * d0 / (d0 - d1));
  }
  grid = clean_grid(std::move(refined), a.lo(), a.hi());
  std::vector<double> ys(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ys[i] = std::max(a(grid[i]), b(grid[i]));
  return ConvexPL(grid, std::move(ys));
}

// ------------------------------------------------------------------- DCFun

DCFun::DCFun(ConvexPL g, ConvexPL h) : g_(std::move(g)), h_(std::move(h)) {
  if (!same_domain(g_.lo(), g_.hi(), h_.lo(), h_.hi()))
    throw Error(Errc::domain_mismatch, "DC components live on different intervals");
  auto grid = clean_grid(merge_grids(g_.breakpoints(), h_.breakpoints()), g_.lo(), g_.hi());
  // Prune breakpoints where neither component bends.
  const ConvexPL g_full = g_.resampled(grid);
  const ConvexPL h_full = h_.resampled(grid);
  const auto& gy = g_full.values();
  const auto& hy = h_full.values();
  double scale = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) scale = std::max({scale, std::abs(gy[i]), std::abs(hy[i])});
  std::vector<std::size_t> keep{0};
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const std::size_t p = keep.back();
    const double eg = gy[i] - interp(grid[p], gy[p], grid[i + 1], gy[i + 1], grid[i]);
    const double eh = hy[i] - interp(grid[p], hy[p], grid[i + 1], hy[i + 1], grid[i]);
    if (std::abs(eg) > kDcTau * scale || std::abs(eh) > kDcTau * scale) keep.push_back(i);
  }
  keep.push_back(grid.size() - 1);
  std::vector<double> xs, gv, hv;
  for (std::size_t i : keep) {
    xs.push_back(grid[i]);
    gv.push_back(gy[i]);
    hv.push_back(hy[i]);
  }
  g_ = ConvexPL(xs, std::move(gv));
  h_ = ConvexPL(std::move(xs), std::move(hv));
}

DCFun DCFun::from_pl(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) throw Error(Errc::empty_input, "PL function needs >= 2 points");
  const std::size_t n = xs.size();
  std::vector<double> slopes(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(xs[i + 1] > xs[i])) throw Error(Errc::out_of_domain, "PL abscissae must increase strictly");
    slopes[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
  }
  std::vector<double> gv(n), hv(n);
  gv[0] = ys[0];
  hv[0] = 0.0;
  // h collects the concave kinks; g = f + h then only bends upward.
  double hs = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i > 0) hs += std::max(0.0, slopes[i - 1] - slopes[i]);
    hv[i + 1] = hv[i] + hs * (xs[i + 1] - xs[i]);
    gv[i + 1] = ys[i + 1] + hv[i + 1];
  }
  std::vector<double> grid(xs.begin(), xs.end());
  return DCFun(ConvexPL(grid, std::move(gv)), ConvexPL(grid, std::move(hv)));
}

DCFun DCFun::affine(double lo, double hi, double slope, double intercept) {
  return DCFun(ConvexPL::affine(lo, hi, slope, intercept), ConvexPL::zero(lo, hi));
}

double DCFun::operator()(double x) const { return g_(x) - h_(x); }

std::vector<double> DCFun::values() const {
  std::vector<double> out(g_.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g_.values()[i] - h_.values()[i];
  return out;
}

double DCFun::left_derivative(double x) const {
  const auto& xs = breakpoints();
  if (x < lo() - grid_eps(lo()) || x > hi() + grid_eps(hi())) throw Error(Errc::out_of_domain, "derivative query");
  if (x <= lo() + grid_eps(lo())) throw Error(Errc::out_of_domain, "no left derivative at the left endpoint");
  // First breakpoint >= x (with snapping).
  std::size_t k = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x - grid_eps(x)) - xs.begin());
  k = std::min(k, xs.size() - 1);
  return slope(k - 1);
}

double DCFun::right_derivative(double x) const {
  const auto& xs = breakpoints();
  if (x < lo() - grid_eps(lo()) || x > hi() + grid_eps(hi())) throw Error(Errc::out_of_domain, "derivative query");
  if (x >= hi() - grid_eps(hi())) throw Error(Errc::out_of_domain, "no right derivative at the right endpoint");
  // Last breakpoint <= x (with snapping).
  std::size_t k = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x + grid_eps(x)) - xs.begin());
  return slope(k - 1);
}

DCFun DCFun::restricted(double a, double b) const {
  if (a < lo() - grid_eps(lo()) || b > hi() + grid_eps(hi()) || !(b > a))
    throw Error(Errc::out_of_domain, "restriction interval outside the domain");
  a = std::max(a, lo());
  b = std::min(b, hi());
  std::vector<double> inner;
  for (double x : breakpoints())
    if (x > a && x < b) inner.push_back(x);
  const auto grid = clean_grid(std::move(inner), a, b);
  return DCFun(g_.resampled(grid), h_.resampled(grid));
}

// -------------------------------------------------------------- operations

DCFun add(const DCFun& a, const DCFun& b) {
  if (!same_domain(a.lo(), a.hi(), b.lo(), b.hi())) throw Error(Errc::domain_mismatch, "add");
  return DCFun(sum_convex(a.g(), b.g()), sum_convex(a.h(), b.h()));
}

DCFun negate(const DCFun& f) { return DCFun(f.h(), f.g()); }

DCFun scale(const DCFun& f, double c) {
  const auto scaled = [](const ConvexPL& p, double s) {
    std::vector<double> ys = p.values();
    for (double& y : ys) y *= s;
    return ConvexPL(p.breakpoints(), std::move(ys));
  };
  if (c >= 0.0) return DCFun(scaled(f.g(), c), scaled(f.h(), c));
  return DCFun(scaled(f.h(), -c), scaled(f.g(), -c));
}

DCFun max2(const DCFun& a, const DCFun& b) {
  if (!same_domain(a.lo(), a.hi(), b.lo(), b.hi())) throw Error(Errc::domain_mismatch, "max2");
  // max(g1 - h1, g2 - h2) = max(g1 + h2, g2 + h1) - (h1 + h2)
  return DCFun(max_convex(sum_convex(a.g(), b.h()), sum_convex(b.g(), a.h())), sum_convex(a.h(), b.h()));
}

DCFun min2(const DCFun& a, const DCFun& b) { return add(add(a, b), negate(max2(a, b))); }

SubdiffInterval clarke_subdiff(const DCFun& f, double x) {
  if (x < f.lo() - grid_eps(f.lo()) || x > f.hi() + grid_eps(f.hi()))
    throw Error(Errc::out_of_domain, "clarke_subdiff query outside the domain");
  if (x <= f.lo() + grid_eps(f.lo())) {
    const double d = f.right_derivative(f.lo());
    return {d, d};
  }
  if (x >= f.hi() - grid_eps(f.hi())) {
    const double d = f.left_derivative(f.hi());
    return {d, d};
  }
  const double l = f.left_derivative(x), r = f.right_derivative(x);
  return {std::min(l, r), std::max(l, r)};
}

double lipschitz_constant(const DCFun& f) {
  double best = 0.0;
  for (std::size_t s = 0; s + 1 < f.breakpoints().size(); ++s) best = std::max(best, std::abs(f.slope(s)));
  return best;
}

std::vector<DCFun> sorted_envelopes(std::span<const DCFun> fs) {
  if (fs.empty()) throw Error(Errc::empty_input, "sorted_envelopes of an empty family");
  const double lo = fs.front().lo(), hi = fs.front().hi();
  std::vector<double> all;
  for (const auto& f : fs) {
    if (!same_domain(lo, hi, f.lo(), f.hi())) throw Error(Errc::domain_mismatch, "sorted_envelopes");
    all.insert(all.end(), f.breakpoints().begin(), f.breakpoints().end());
  }
  const auto base = clean_grid(all, lo, hi);
  const std::size_t n = fs.size();

  // Refine with all pairwise crossings so that no two inputs cross inside a cell.
  std::vector<std::vector<double>> vals(n, std::vector<double>(base.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < base.size(); ++j) vals[i][j] = fs[i](base[j]);
  std::vector<double> refined = base;
  for (std::size_t c = 0; c + 1 < base.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double d0 = vals[i][c] - vals[k][c];
        const double d1 = vals[i][c + 1] - vals[k][c + 1];
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0))
          refined.push_back(base[c] + (base[c + 1] - base[c]) * d0 / (d0 - d1));
      }
    }
  }
  const auto grid = clean_grid(std::move(refined), lo, hi);

  std::vector<std::vector<double>> ranked(n, std::vector<double>(grid.size()));
  std::vector<double> column(n);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = fs[i](grid[j]);
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < n; ++i) ranked[i][j] = column[i];
  }
  std::vector<DCFun> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(DCFun::from_pl(grid, ranked[i]));
  return out;
}

}  // namespace uwdc
