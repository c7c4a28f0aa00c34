#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sirnet/model.hpp"
#include "sirnet/point_process.hpp"

namespace sirnet {

/// One Monte Carlo draw. sir <= sir0 whenever both are finite (I >= I_0).
/// no_interferer flags draws whose window held no interferer at all; such
/// draws carry infinite sir/sir0 and are excluded from estimates.
struct SirSample {
  double signal = 0.0;                 // S
  double interference = 0.0;           // I, total
  double nearest_interference = 0.0;   // I_0
  double sir = 0.0;                    // S / I
  double sir0 = 0.0;                   // S / I_0
  double serving_distance = 0.0;       // R_0 for cellular, b for ad hoc
  bool no_interferer = false;
};

/// Interference contributed by a pattern: each location adds
/// sum_{k<mult} h_k * loss(r), fades drawn here in location order (k-inner).
/// `exclude` removes one location entirely (cellular serving point).
double interference(const PointPattern& pattern, const NetworkScenario& scenario,
                    std::optional<std::size_t> exclude, rng::Engine& g);

/// One SIR draw on a fresh pattern. Fade draw order: pattern positions first,
/// then h_0 (and h_1 when a colocated partner exists), then per-location
/// fades ascending by location index, skipping the serving location.
SirSample sample_sir(const NetworkScenario& scenario, const Window& window,
                     rng::Engine& g);

/// Window radius whose truncated Campbell tail 2 pi lambda W^(2-a)/(a-2) is
/// rel_tol times the unit-annulus reference 2 pi lambda / (a-2):
/// W = rel_tol^(-1/(alpha-2)). Throws when W would exceed 1e6.
double required_window_radius(const NetworkScenario& scenario, double rel_tol);

/// n independent draws, deterministic in (seed); worker threads consume fixed
/// 4096-sample chunks with per-chunk substreams, so the output is identical
/// for any thread count. threads = 0 picks hardware concurrency.
std::vector<SirSample> batch_simulate(const NetworkScenario& scenario,
                                      const Window& window, std::size_t n,
                                      std::uint64_t seed, unsigned threads = 0);

/// CSV dump: signal,interference,nearest_interference,sir,sir0,serving_distance
/// (scientific notation, 9 significant digits).
void write_samples_csv(std::ostream& os, const std::vector<SirSample>& samples);

namespace detail {
/// Core computation on a location/squared-distance buffer (multiplicity and
/// topology semantics from the scenario). Used by sample_sir and the tests.
SirSample sir_from_r2(const NetworkScenario& scenario,
                      const std::vector<double>& r2, rng::Engine& g);
}  // namespace detail

}  // namespace sirnet
