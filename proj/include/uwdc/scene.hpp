#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uwdc/dc_fun.hpp"
#include "uwdc/region.hpp"

namespace uwdc {

struct ConvexPolygonShape {
  Ring vertices;  ///< counterclockwise, strictly convex
  friend bool operator==(const ConvexPolygonShape&, const ConvexPolygonShape&) = default;
};

struct DiskShape {
  Vec2 center;
  double radius = 1.0;
  friend bool operator==(const DiskShape&, const DiskShape&) = default;
};

/// {t v_perp + s v : t in [lower.lo(), lower.hi()], lower(t) <= s <= upper(t)}.
struct SlabShape {
  Vec2 direction{0.0, 1.0};
  DCFun lower;
  DCFun upper;
  friend bool operator==(const SlabShape&, const SlabShape&) = default;
};

struct SegmentShape {
  Vec2 p;
  Vec2 q;
  friend bool operator==(const SegmentShape&, const SegmentShape&) = default;
};

struct PointShape {
  Vec2 p;
  friend bool operator==(const PointShape&, const PointShape&) = default;
};

using Shape = std::variant<ConvexPolygonShape, DiskShape, SlabShape, SegmentShape, PointShape>;

inline constexpr double kDefaultCurveTol = 1e-4;

struct Piece {
  std::string name;
  Shape shape;
  /// Discretization tolerance for curved variants.
  double tol = kDefaultCurveTol;

  bool is_convex() const;
  friend bool operator==(const Piece&, const Piece&) = default;
};

Piece make_polygon(std::string name, Ring ccw_vertices);
Piece make_rect(std::string name, Vec2 lo, Vec2 hi);
Piece make_disk(std::string name, Vec2 center, double radius, double tol = kDefaultCurveTol);
Piece make_slab(std::string name, Vec2 direction, DCFun lower, DCFun upper);
Piece make_segment(std::string name, Vec2 p, Vec2 q);
Piece make_point(std::string name, Vec2 p);

/// Number of sides of the inscribed polygon whose sagitta is within tol.
int disk_sides(double radius, double tol);

/// Hausdorff-close polygonal region for a piece (exact for polygons,
/// segments, points and slabs; inscribed polygons for disks).
PolyRegion polygonize(const Piece& piece);

/// Index subsets are bit masks over the piece list (bit i <=> piece i).
using IndexSet = std::uint64_t;

struct Scene {
  std::vector<Piece> pieces;
  Rect window;
  /// Genericity tolerance.
  double tau = kTau;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Builds a scene and derives a window with margin of one piece diameter.
Scene make_scene(std::vector<Piece> pieces, double tau = kTau);
Rect default_window(const std::vector<Piece>& pieces);

/// Polygonized pieces, in order.
std::vector<PolyRegion> polygonized(const Scene& scene);

/// M_I = intersection of the pieces with index in I (I nonempty).
PolyRegion intersect_lattice(const Scene& scene, IndexSet subset);
PolyRegion intersect_lattice(const Scene& scene, const std::vector<PolyRegion>& regions, IndexSet subset);

/// Calls visit(I, M_I) for every nonempty I with M_I nonempty, in increasing
/// mask order. Supersets of empty sets are skipped.
void for_each_lattice_set(const Scene& scene, const std::vector<PolyRegion>& regions,
                          const std::function<void(IndexSet, const PolyRegion&)>& visit);

PolyRegion union_region(const Scene& scene);
int complement_components(const Scene& scene);

/// Throws DegenerateContact naming the offending pair if two pieces touch
/// tangentially (a vertex of one within tau of the other's boundary).
void require_generic(const Scene& scene);
std::optional<std::string> find_degenerate_pair(const Scene& scene);

Scene transformed(const Scene& scene, const Isometry& iso);
Piece transformed(const Piece& piece, const Isometry& iso);

}  // namespace uwdc
