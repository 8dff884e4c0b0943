#pragma once

// One-variable DC calculus on compact intervals. Every function is piecewise
// linear, so sums, maxima, minima and sorted envelopes are computed exactly
// (up to floating point) by refining breakpoint grids.

#include <span>
#include <vector>

namespace uwdc {

/// Convex piecewise-linear function on [breakpoints.front(), breakpoints.back()].
class ConvexPL {
 public:
  ConvexPL(std::vector<double> xs, std::vector<double> ys);

  static ConvexPL affine(double lo, double hi, double slope, double intercept);
  static ConvexPL zero(double lo, double hi) { return affine(lo, hi, 0.0, 0.0); }

  double operator()(double x) const;
  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }
  std::size_t segments() const { return xs_.size() - 1; }
  double slope(std::size_t seg) const;

  /// Values resampled on a finer grid with the same endpoints.
  ConvexPL resampled(std::span<const double> grid) const;
  bool is_convex(double tol) const;

  friend bool operator==(const ConvexPL&, const ConvexPL&) = default;

 private:
  ConvexPL() = default;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

struct SubdiffInterval {
  double lo;
  double hi;
};

/// f = g - h with g, h convex PL on a common interval and a common grid.
class DCFun {
 public:
  DCFun(ConvexPL g, ConvexPL h);

  /// DC decomposition of an arbitrary continuous PL function: positive slope
  /// jumps go into g, negative ones into h.
  static DCFun from_pl(std::span<const double> xs, std::span<const double> ys);
  static DCFun affine(double lo, double hi, double slope, double intercept);
  static DCFun constant(double lo, double hi, double c) { return affine(lo, hi, 0.0, c); }

  double operator()(double x) const;
  double lo() const { return g_.lo(); }
  double hi() const { return g_.hi(); }
  const ConvexPL& g() const { return g_; }
  const ConvexPL& h() const { return h_; }
  const std::vector<double>& breakpoints() const { return g_.breakpoints(); }
  /// f at each breakpoint.
  std::vector<double> values() const;
  /// Slope of f on segment seg of the shared grid.
  double slope(std::size_t seg) const { return g_.slope(seg) - h_.slope(seg); }
  double left_derivative(double x) const;
  double right_derivative(double x) const;

  DCFun restricted(double lo, double hi) const;

  friend bool operator==(const DCFun&, const DCFun&) = default;

 private:
  ConvexPL g_;
  ConvexPL h_;
};

/// Tolerance used for canonicalization and convexity checks.
inline constexpr double kDcTau = 1e-9;

DCFun add(const DCFun& a, const DCFun& b);
DCFun negate(const DCFun& f);
DCFun scale(const DCFun& f, double c);
DCFun max2(const DCFun& a, const DCFun& b);
DCFun min2(const DCFun& a, const DCFun& b);

/// Interval hull of the one-sided derivatives. At the domain endpoints only
/// the interior one-sided derivative exists.
SubdiffInterval clarke_subdiff(const DCFun& f, double x);

double lipschitz_constant(const DCFun& f);

/// Pointwise sorted family g_1 <= ... <= g_n with the same union of graphs.
std::vector<DCFun> sorted_envelopes(std::span<const DCFun> fs);

/// Maximum of two convex PL functions on a common domain.
ConvexPL max_convex(const ConvexPL& a, const ConvexPL& b);
ConvexPL sum_convex(const ConvexPL& a, const ConvexPL& b);

}  // namespace uwdc
