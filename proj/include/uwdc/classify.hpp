#pragma once

// Local cone types at boundary points, exceptional directions, the UWDC
// verdict, and the DC aura of a slab.
//
// Frames follow gamma_{x,v}: local (s, w) maps to x + s v + w perp(v), and the
// cone A_r^u is {0 <= s <= r, |w| <= u s}.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwdc/dc_fun.hpp"
#include "uwdc/planar.hpp"
#include "uwdc/region.hpp"
#include "uwdc/scene.hpp"

namespace uwdc {

/// T1..T5 are single-piece types; ST1..ST3 are the scene types.
enum class ConeKind { T1, T2, T3, T4, T5, ST1, ST2, ST3, inconclusive };

std::string_view to_string(ConeKind kind);

struct ConeType {
  ConeKind kind = ConeKind::inconclusive;
  Vec2 apex;       ///< boundary point actually used (snapped onto the boundary)
  Vec2 direction;
  double r = 0.0;  ///< scale at which the type was established (last tried if inconclusive)
  double u = 0.0;
  int ladder_level = 0;
  /// ST3: f_1 <= ... <= f_n. T3: {U}. T4: {L}. T5: {L, U}.
  std::vector<DCFun> witnesses;
  /// Adjacent graphs that touch inside (0, r) enclose points outside the set,
  /// at every scale of the ladder.
  bool violation = false;
  std::string detail;
};

inline constexpr int kLadderSteps = 8;

/// Scene type at x in direction v. Tries r, r/2, ..., r/2^8 at fixed u and
/// returns the first conclusive answer. Throws NotBoundaryPoint.
ConeType classify_point(const Scene& scene, Vec2 x, Vec2 v, double r, double u);
ConeType classify_point(const PolyRegion& m, Vec2 x, Vec2 v, double r, double u, double snap_tol = kTau);

/// Single-piece type T1..T5 (or inconclusive).
ConeType classify_piece_point(const Piece& piece, Vec2 x, Vec2 v, double r, double u);

struct ExceptionalDirections {
  Vec2 apex;
  std::vector<Vec2> directions;  ///< sorted by angle
  double r = 0.0;
  double u = 0.0;
  bool covering_ok = false;    ///< boundary near x lies in the union of the u-cones
  bool separation_ok = false;  ///< distinct 2u-cones only share the apex
};

/// Tangent rays of the boundary at x, with a common scale (r, u) at which the
/// covering and separation conditions hold. Throws NotBoundaryPoint.
ExceptionalDirections exceptional_directions(const Scene& scene, Vec2 x);
ExceptionalDirections exceptional_directions(const PolyRegion& m, Vec2 x, double snap_tol = kTau);

struct BoundaryGraph {
  Polyline curve;
  Vec2 direction;
  double lipschitz = 1.0;
  double turn = 0.0;
};

enum class VerdictStatus { certified, refuted, inconclusive };

std::string_view to_string(VerdictStatus status);

struct UWDCVerdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  int complement_count = 0;
  std::vector<BoundaryGraph> boundary_graphs;
  std::size_t isolated_points = 0;
  std::size_t points_checked = 0;
  std::vector<std::string> failures;
};

UWDCVerdict uwdc_verdict(const Scene& scene);

/// H(x, y) = 2L max(0, x - a, -x) + max(0, y - g~(x), h~(x) - y) with g~, h~
/// extended by constants outside [0, a]. Throws BadBounds.
double aura_eval(const DCFun& g, const DCFun& h, double lipschitz, Vec2 p);

struct WeakRegularReport {
  bool ok = false;
  double min_norm = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
  Vec2 worst;
};

/// Samples a grid around the slab and checks that every point with
/// 0 < H <= band has a Clarke subdifferential bounded away from 0 by min(1, L).
WeakRegularReport weak_regular_check(const DCFun& g, const DCFun& h, double lipschitz, double band,
                                     int resolution = 200);

/// Minimum norm over the Clarke subdifferential of H at p (exact for PL data).
double aura_min_subgradient(const DCFun& g, const DCFun& h, double lipschitz, Vec2 p);

}  // namespace uwdc
