#pragma once

// Polygonal stand-ins for compact planar sets: a regular closed area part
// (polygons with holes) plus a lower-dimensional part (segments and points).
// The lower-dimensional part may overlap the area part; every measure is
// computed as a valuation, f(A u G) = f(A) + f(G) - f(A n G), so overlaps are
// counted correctly.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwdc/planar.hpp"
#include "uwdc/vec2.hpp"

namespace uwdc {

/// Outer ring counterclockwise, holes clockwise, rings open (no repeated vertex).
struct Polygon {
  Ring outer;
  std::vector<Ring> holes;
};

struct PolyRegion {
  std::vector<Polygon> polygons;
  std::vector<Segment2> segments;
  std::vector<Vec2> points;

  bool empty() const { return polygons.empty() && segments.empty() && points.empty(); }
  bool has_lower_dim() const { return !segments.empty() || !points.empty(); }
  std::vector<Vec2> vertices() const;
  /// Bounding box; undefined for an empty region.
  Rect bounds() const;
};

double signed_area(const Ring& ring);
bool is_convex_ring(const Ring& ring, double tol = kTau);
double area(const PolyRegion& r);
/// Total length of all ring edges.
double boundary_length(const PolyRegion& r);

PolyRegion transformed(const PolyRegion& r, const Isometry& iso);

/// Closed-set membership (boundary within tol counts as inside).
bool in_closed_area(const PolyRegion& r, Vec2 p, double tol = kTau);
/// Interior membership of the area part.
bool in_open_area(const PolyRegion& r, Vec2 p, double tol = kTau);

/// Intersection of closed regions. With assume_generic the caller guarantees
/// there is no tangential contact, so boundary-boundary contacts need not be
/// tracked; `degenerate` (if given) reports a detected near-contact.
PolyRegion intersect(const PolyRegion& a, const PolyRegion& b, bool assume_generic = false,
                     bool* degenerate = nullptr);
PolyRegion unite(const PolyRegion& a, const PolyRegion& b);
/// r n {y : y.v <= t}.
PolyRegion clip_halfplane(const PolyRegion& r, Vec2 v, double t);
/// Area of the area part inside an axis-aligned rectangle.
double area_in_rect(const PolyRegion& r, const Rect& f);

struct ConvexClip {
  Ring ring;  ///< empty when the intersection has no interior
  bool degenerate = false;
};

/// Intersection of two counterclockwise convex rings in O((n + m) log(n + m)).
ConvexClip intersect_convex(const Ring& p, const Ring& q, double tol = kTau);

/// A planar straight-line graph: edges only meet at shared vertices.
struct PlanarGraph {
  std::vector<Vec2> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  int euler_char() const { return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()); }
  std::vector<int> degrees() const;
};

PlanarGraph planarize(std::span<const Segment2> segments, std::span<const Vec2> points, double tol = kTau);

/// The lower-dimensional part as a planar graph.
PlanarGraph lower_graph(const PolyRegion& r);
/// The lower-dimensional part clipped to the closed area part.
PlanarGraph lower_graph_in_area(const PolyRegion& r);

/// Pieces of a segment inside the closed area part of r: sub-segments and
/// isolated touching points.
void clip_segment_to_area(const PolyRegion& r, Segment2 s, std::vector<Segment2>& out_segments,
                          std::vector<Vec2>& out_points, double tol = kTau);

/// Boundary of the set: ring edges plus lower-dimensional features outside the
/// interior of the area part.
struct BoundaryFeatures {
  std::vector<Segment2> segments;
  std::vector<Vec2> points;
};
BoundaryFeatures boundary_features(const PolyRegion& r);

/// Euler characteristic of the closed set.
int euler_char(const PolyRegion& r);
/// Number of connected components of the closed set.
int component_count(const PolyRegion& r);
/// Number of connected components of the complement (the unbounded one included).
int complement_count(const PolyRegion& r);

/// Description of the first near-contact (a vertex of one region within tol
/// of the other's boundary), if any.
std::optional<std::string> find_contact(const PolyRegion& a, const PolyRegion& b, double tol);

/// Intersection of two closed segments: nothing, a point, or an overlap.
struct SegmentMeet {
  enum class Kind { none, point, overlap } kind = Kind::none;
  Vec2 p;
  Vec2 q;
};
SegmentMeet meet(Segment2 s, Segment2 t, double tol = kTau);

}  // namespace uwdc
