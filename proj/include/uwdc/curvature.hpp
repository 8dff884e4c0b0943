#pragma once

// Planar curvature measures under the Steiner normalization:
//   area(A_eps) = C2 + 2 eps C1 + pi eps^2 C0,
// so C2 is area, C1 is half the boundary length of a 2-dimensional part (full
// length of a bare segment), and C0 totals to the Euler characteristic.

#include <optional>
#include <string>
#include <vector>

#include "uwdc/region.hpp"
#include "uwdc/scene.hpp"

namespace uwdc {

struct CurvatureTable {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<Rect> localized_to;

  double operator[](int k) const { return k == 0 ? c0 : (k == 1 ? c1 : c2); }
};

CurvatureTable curvature_region(const PolyRegion& r, const std::optional<Rect>& window = std::nullopt);

/// Inclusion-exclusion over the intersection lattice of a generic scene.
double curvature_scene(const Scene& scene, int k, const std::optional<Rect>& window = std::nullopt);
CurvatureTable curvature_scene_table(const Scene& scene, const std::optional<Rect>& window = std::nullopt);

/// Total variation of C0 restricted to the window.
double c0_var(const PolyRegion& r, const std::optional<Rect>& window = std::nullopt);

struct IdentityReport {
  bool ok = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

/// C0 of the scene (inclusion-exclusion) against chi of the union.
IdentityReport gauss_bonnet_check(const Scene& scene, double tol = 1e-6);

/// chi(M n H_{v,t}) against the inclusion-exclusion sum of chi(M_I n H_{v,t}).
/// Throws TouchingHalfplane when the line passes within tau of a vertex of
/// the union or of a lattice set.
IdentityReport slicing_identity_check(const Scene& scene, Vec2 v, double t);

/// Parallel-set area of a convex piece (buffered polygonization) against
/// C2 + 2 eps C1 + pi eps^2 C0.
IdentityReport steiner_check(const Piece& piece, double eps, double tol = 1e-3);

/// Area of the eps-parallel set of a region, computed by polygon buffering.
double parallel_set_area(const PolyRegion& r, double eps, int points_per_circle = 3600);

/// CSV rows "scene,k,window,value".
std::string curvature_csv(const std::string& scene_id, const CurvatureTable& table, const std::vector<int>& ks,
                          bool header = true);

}  // namespace uwdc
