#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sirnet/analytic.hpp"
#include "sirnet/model.hpp"
#include "sirnet/sir_engine.hpp"

namespace sirnet {

/// Which per-sample value a CCDF estimate is taken over.
enum class SampleField { Sir, Sir0, Interference, NearestInterference };

/// Empirical CCDF over a theta grid with Wilson-score intervals.
/// p_hat is non-increasing by construction; excluded counts the flagged
/// (infinite) samples left out of the estimate.
struct CcdfEstimate {
  std::vector<double> thetas;
  std::vector<double> p_hat;
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  std::size_t n = 0;         // samples used
  std::size_t excluded = 0;  // flagged samples left out
  double confidence = 0.95;
};

CcdfEstimate estimate_ccdf(std::span<const SirSample> samples,
                           std::span<const double> theta_grid,
                           SampleField field, double confidence = 0.95);

/// CCDF of a raw value sequence (used for interference tails and synthetic
/// curves in tests). Non-finite values are excluded and counted.
CcdfEstimate estimate_ccdf_values(std::span<const double> values,
                                  std::span<const double> theta_grid,
                                  double confidence = 0.95);

/// Log-spaced grid, points_per_decade per decade, inclusive of both ends.
std::vector<double> log_grid(double theta_min, double theta_max,
                             int points_per_decade = 60);

/// Normal quantile (Acklam's rational approximation, |err| < 1.2e-8).
double normal_quantile(double p);

struct FitWindow {
  double theta_min = 0.0;
  double theta_max = 0.0;
};

enum class FitWeighting {
  CiLog,     // inverse squared CI width of the fitted (log) coordinate
  CiLinear,  // inverse squared CI width of p_hat itself
  Uniform,
};

/// Least-squares tail fit in transformed coordinates.
///   PowerLaw lower: log(1-p) vs log t, exponent > 0
///   PowerLaw upper: log(p)   vs log t, exponent < 0
///   Exponential:    log(-log p) vs log t, exponent ~ delta, intercept ~ log A
struct TailFit {
  TailFamily family = TailFamily::PowerLaw;
  double exponent = 0.0;
  double exponent_se = 0.0;
  double intercept = 0.0;  // log pre-constant
  FitWindow window{};
  double r_squared = 0.0;
  std::size_t points = 0;
};

TailFit fit_power_tail(const CcdfEstimate& est, TailRegime regime,
                       const FitWindow& window,
                       FitWeighting weighting = FitWeighting::CiLog);

TailFit fit_exponential_tail(const CcdfEstimate& est, const FitWindow& window,
                             FitWeighting weighting = FitWeighting::CiLog);

enum class WindowProfile {
  Bulk,  // tail probability in [10/n, 0.2] (default)
  Deep,  // tail probability in [10/n, 4000/n] (asymptotic-order fits)
};

/// Largest contiguous theta range whose tail probability (p for the upper
/// regime, 1-p for the lower) lies inside the profile band, with p strictly
/// inside (0,1). nullopt when fewer than 5 grid points qualify.
std::optional<FitWindow> auto_fit_window(const CcdfEstimate& est,
                                         TailRegime regime,
                                         WindowProfile profile = WindowProfile::Bulk);

enum class TailClass { PowerLaw, Exponential, Inconclusive };

struct ClassifyConfig {
  double r2_floor = 0.98;
  double r2_margin = 0.02;
};

/// Which family the windowed data supports, by r-squared comparison of the
/// two fits. A candidate whose fitted shape is structurally invalid for the
/// regime (e.g. a non-positive exponential slope) is rejected outright.
TailClass classify_tail(const CcdfEstimate& est, TailRegime regime,
                        const FitWindow& window, const ClassifyConfig& cfg = {});

struct MomentEstimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t n = 0;
  double window_radius = 0.0;
  bool stabilized = true;  // relative se <= 10%
};

/// Monte Carlo E_o!(I_inf^-delta) under the Palm construction of the
/// scenario's support process (Slivnyak for the PPP; conditioned thinning for
/// Matern II; anchored site for the lattice). Duplicated scenarios sum
/// colocated pair fades. Singular path loss only. Truncation at the
/// rel_tol window biases the estimate up by O(rel_tol); reported alongside.
MomentEstimate estimate_palm_inv_moment(const NetworkScenario& scenario,
                                        double delta, std::size_t n,
                                        std::uint64_t seed,
                                        double rel_tol = 1e-4);

/// Monte Carlo E[I^m] for bounded path loss (total interference under the
/// scenario's own semantics, serving point excluded for cellular).
MomentEstimate estimate_interference_moment(const NetworkScenario& scenario,
                                            int m, std::size_t n,
                                            std::uint64_t seed,
                                            double rel_tol = 1e-3);

/// Monte Carlo E[R2bar^2]: mean squared distance from a typical point of the
/// support process (removed) to its nearest neighbour, via the Palm
/// construction. PPP: 1/(lambda_s pi). Cellular scenarios only.
MomentEstimate estimate_mean_sq_second_nearest(const NetworkScenario& scenario,
                                               std::size_t n,
                                               std::uint64_t seed);

/// ccdf CSV: theta,p_hat,ci_low,ci_high (scientific, 9 significant digits).
void write_ccdf_csv(std::ostream& os, const CcdfEstimate& est);

}  // namespace sirnet
