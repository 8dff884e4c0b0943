#pragma once

// Monte Carlo check of the planar kinematic formula
//   int C_k(M n gK) dg = sum_{i+j=2+k} gamma_{i,j} C_i(M) C_j(K)
// under the motion measure (dtheta / 2pi) x Lebesgue(dt).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uwdc/curvature.hpp"
#include "uwdc/planar.hpp"
#include "uwdc/scene.hpp"

namespace uwdc {

/// Rotate by theta about the origin, then translate by t.
struct Motion {
  double theta = 0.0;
  Vec2 t;

  Isometry isometry() const;
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Samples rejected for tangential contact (each one resampled).
  std::vector<Motion> rejected;
};

/// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

Motion sample_motion(std::mt19937_64& rng, const Rect& window);

/// Translations outside this rectangle cannot make M and gK meet.
Rect support_window(const Scene& m, const Scene& k);

struct KinematicOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::optional<Rect> window;
  unsigned threads = 0;        ///< 0: hardware concurrency
  std::size_t chunk = 4096;    ///< samples per independently seeded substream
};

/// Area(W) times the mean of C_k(M n g_i K) over sampled motions, with theta
/// stratified into 16 strata. Throws WindowTooSmall when an explicit window
/// cuts through the support; a window missing the support entirely yields 0.
MCEstimate kinematic_lhs(const Scene& m, const Scene& k, int index, const KinematicOptions& opt);

struct CalibrationRow {
  std::string label;
  std::vector<double> coefficients;  ///< products C_i(M) C_j(K), i ascending
  double value = 0.0;                ///< closed-form integral
};

struct GammaTable {
  /// gamma[i][j], meaningful for 2 <= i + j <= 4.
  std::array<std::array<double, 3>, 3> gamma{};
  std::array<std::vector<CalibrationRow>, 3> systems;

  double operator()(int i, int j) const { return gamma[i][j]; }
};

/// Solves for the constants from closed-form integrals of disk and square
/// pairs. Throws SingularCalibration if a system is rank deficient.
GammaTable calibrate_gammas();

/// sum_{i+j=2+k} gamma_{i,j} C_i(M) C_j(K).
double kinematic_rhs(const CurvatureTable& m, const CurvatureTable& k, int index, const GammaTable& gammas);

struct KinematicReport {
  int k = 0;
  double lhs = 0.0;
  double std_error = 0.0;
  double rhs = 0.0;
  GammaTable gammas;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t rejected = 0;
  bool pass = false;
};

/// Passes if |lhs - rhs| <= max(tol, 4 stderr).
KinematicReport kinematic_verify(const Scene& m, const Scene& k, int index, const KinematicOptions& opt,
                                 double tol = 0.0);

}  // namespace uwdc
