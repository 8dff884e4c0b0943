#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwdc/dc_fun.hpp"
#include "uwdc/vec2.hpp"

namespace uwdc {

/// The orientation-preserving isometry sending 0 to z and (1,0) to z + v.
struct Isometry {
  Vec2 z;
  Vec2 v{1.0, 0.0};

  Vec2 apply(Vec2 p) const { return z + p.x * v + p.y * perp(v); }
  /// Rotation part only.
  Vec2 apply_linear(Vec2 p) const { return p.x * v + p.y * perp(v); }
  Isometry inverse() const;
};

Isometry make_isometry(Vec2 z, Vec2 v);

/// Cone A_r^{w u}(z, v): image under gamma_{z,v} of
/// {(x, y) : 0 <= x < r, |y| <= w u x}.
struct Cone {
  Vec2 apex;
  Vec2 dir;
  double r = 1.0;
  double u = 1.0;
  int width = 1;

  bool contains(Vec2 p, double tol = kTau) const;
  double slope() const { return width * u; }
};

/// Angle in [0, pi] between unit vectors.
double angle(Vec2 v, Vec2 w);

struct Polyline {
  std::vector<Vec2> vertices;
  bool closed = false;

  std::size_t edge_count() const { return closed ? vertices.size() : vertices.size() - 1; }
  Segment2 edge(std::size_t i) const { return {vertices[i], vertices[(i + 1) % vertices.size()]}; }
  double length() const;
  /// Points spaced at most `step` apart along the polyline (vertices included).
  std::vector<Vec2> densified(double step) const;
};

/// Directed-both-ways Hausdorff distance between finite point sets.
double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

/// Hausdorff distance between polylines. Each side is densified to `resolution`
/// and measured against the other side's segments exactly, so the result is
/// within `resolution` of the true value.
double hausdorff(const Polyline& a, const Polyline& b, double resolution);

struct LipschitzGraphResult {
  bool ok = false;
  /// First violating vertex pair on failure.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  /// The PL function t -> height over the v-perp axis on success.
  std::optional<DCFun> function;
};

/// Pairwise test |(A - B).v| <= L / sqrt(1 + L^2) |A - B| over all vertex pairs.
LipschitzGraphResult is_lipschitz_graph(const Polyline& p, Vec2 v, double lipschitz, double tol = kTau);

/// Sum of angles between consecutive edge directions.
double turn(const Polyline& p);
/// Sum of oriented angles between consecutive edge directions.
double signed_turn(const Polyline& p);

struct GraphPiece {
  Polyline curve;
  /// The graph direction (bisector of the piece's normal span).
  Vec2 direction;
};

bool is_simple(const Polyline& p, double tol = kTau);

/// Distance between two closed segments.
double segment_distance(Segment2 s, Segment2 t);

/// Splits a simple closed polyline into open pieces whose outer normals span
/// less than a quarter turn; each piece is a 1-Lipschitz graph in its
/// bisector direction.
std::vector<GraphPiece> decompose_one_lipschitz(const Polyline& p);

struct DcCertificate {
  bool ok = false;
  std::string reason;
  Vec2 direction;
  double lipschitz = 0.0;
  double turn = 0.0;
};

DcCertificate dc_certify(const Polyline& p, Vec2 v, double lipschitz, double max_turn);

/// {t v_perp + f(t) v : t in [a, b]} with v_perp = v rotated by -pi/2.
struct EmbeddedGraph {
  Vec2 direction{0.0, 1.0};
  DCFun f;

  Vec2 point(double t) const { return t * perp_cw(direction) + f(t) * direction; }
};

/// The graph as a polyline through its breakpoints. PL graphs are exact, so
/// the tolerance only matters for callers that discretized a curve upstream.
Polyline realize(const EmbeddedGraph& graph, double tol);

/// PL interpolant of a concave or convex function on [a, b], refined by
/// bisection until the midpoint deviation of every cell is at most tol.
DCFun sample_function(const std::function<double(double)>& fn, double a, double b, double tol);

}  // namespace uwdc
