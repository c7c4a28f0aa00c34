#include "sirnet/sir_engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace sirnet {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double interference(const PointPattern& pattern, const NetworkScenario& scenario,
                    std::optional<std::size_t> exclude, rng::Engine& g) {
  const int mult = scenario.points_per_location();
  for (std::size_t i = 0; i < pattern.multiplicities.size(); ++i) {
    if (pattern.multiplicities[i] != mult)
      throw std::invalid_argument("interference: pattern multiplicity does not match scenario");
  }
  FadeSampler fade(scenario.fading);
  double total = 0.0;
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    if (exclude && *exclude == i) continue;
    const double r2 =
        pattern.points[i].x * pattern.points[i].x + pattern.points[i].y * pattern.points[i].y;
    double f = fade(g);
    for (int k = 1; k < mult; ++k) f += fade(g);
    total += f * scenario.path_loss.loss_from_r2(r2);
  }
  return total;
}

namespace detail {

SirSample sir_from_r2(const NetworkScenario& scenario, const std::vector<double>& r2,
                      rng::Engine& g) {
  FadeSampler fade(scenario.fading);
  const PathLossModel& pl = scenario.path_loss;
  SirSample s;

  if (scenario.topology == Topology::AdHoc) {
    const bool dup = scenario.multiplicity == Multiplicity::Duplicated;
    const double loss_b = pl(scenario.b);
    const double h0 = fade(g);
    const double h1 = dup ? fade(g) : 0.0;
    s.signal = h0 * loss_b;
    s.serving_distance = scenario.b;

    double total = 0.0;
    double min_r2 = kInf;
    double near_fade = 0.0, near_loss = 0.0;
    for (double q : r2) {
      const double loss = pl.loss_from_r2(q);
      double f1 = fade(g);
      double contrib = f1;
      if (dup) contrib += fade(g);
      total += contrib * loss;
      if (q < min_r2) {
        min_r2 = q;
        near_fade = f1;
        near_loss = loss;
      }
    }
    if (dup) {
      total += h1 * loss_b;
      // The colocated partner caps the nearest-interferer distance at b.
      if (scenario.b * scenario.b < min_r2) {
        s.nearest_interference = h1 * loss_b;
      } else {
        s.nearest_interference = near_fade * near_loss;
      }
      s.interference = total;
    } else {
      if (r2.empty()) {
        s.no_interferer = true;
        s.sir = s.sir0 = kInf;
        return s;
      }
      s.interference = total;
      s.nearest_interference = near_fade * near_loss;
    }
    s.sir = s.signal / s.interference;
    s.sir0 = s.signal / s.nearest_interference;
    return s;
  }

  // Cellular: serve from the nearest location.
  if (r2.empty())
    throw std::runtime_error("sample_sir: cellular scenario with an empty pattern");
  std::size_t serve = 0;
  for (std::size_t i = 1; i < r2.size(); ++i)
    if (r2[i] < r2[serve]) serve = i;

  const bool dup = scenario.multiplicity == Multiplicity::Duplicated;
  const bool partner = dup || scenario.duplicate_serving_only;
  const double loss_serve = pl.loss_from_r2(r2[serve]);
  const double h0 = fade(g);
  const double h1 = partner ? fade(g) : 0.0;
  s.signal = h0 * loss_serve;
  s.serving_distance = std::sqrt(r2[serve]);

  double total = partner ? h1 * loss_serve : 0.0;
  double min_r2 = kInf;
  double near_fade = 0.0, near_loss = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    if (i == serve) continue;
    const double loss = pl.loss_from_r2(r2[i]);
    double f1 = fade(g);
    double contrib = f1;
    if (dup) contrib += fade(g);
    total += contrib * loss;
    if (r2[i] < min_r2) {
      min_r2 = r2[i];
      near_fade = f1;
      near_loss = loss;
    }
  }
  if (partner) {
    // Colocated partner is the nearest interferer (R = R_0).
    s.interference = total;
    s.nearest_interference = h1 * loss_serve;
  } else if (min_r2 < kInf) {
    s.interference = total;
    s.nearest_interference = near_fade * near_loss;
  } else {
    s.no_interferer = true;
    s.sir = s.sir0 = kInf;
    return s;
  }
  s.sir = s.signal / s.interference;
  s.sir0 = s.signal / s.nearest_interference;
  return s;
}

}  // namespace detail

SirSample sample_sir(const NetworkScenario& scenario, const Window& window,
                     rng::Engine& g) {
  scenario.validate();
  std::vector<double> r2;
  detail::sample_support_r2(scenario, window.radius, g, r2);
  return detail::sir_from_r2(scenario, r2, g);
}

double required_window_radius(const NetworkScenario& scenario, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("required_window_radius: rel_tol must lie in (0,1)");
  const double alpha = scenario.path_loss.alpha;
  if (!(alpha > 2.0))
    throw std::domain_error("required_window_radius: alpha must exceed 2");
  const double W = std::pow(rel_tol, -1.0 / (alpha - 2.0));
  if (!(W <= 1e6))
    throw std::domain_error("required_window_radius: window exceeds 1e6 (alpha too close to 2)");
  return W;
}

std::vector<SirSample> batch_simulate(const NetworkScenario& scenario,
                                      const Window& window, std::size_t n,
                                      std::uint64_t seed, unsigned threads) {
  scenario.validate();
  if (n == 0) throw std::invalid_argument("batch_simulate: n must be >= 1");
  if (threads == 0) {
    threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

  std::vector<SirSample> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&]() {
    std::vector<double> r2;
    try {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) break;
        rng::Engine g = rng::make_engine(seed, c);
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
          detail::sample_support_r2(scenario, window.radius, g, r2);
          out[i] = detail::sir_from_r2(scenario, r2, g);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void write_samples_csv(std::ostream& os, const std::vector<SirSample>& samples) {
  os << "signal,interference,nearest_interference,sir,sir0,serving_distance\n";
  char buf[160];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n", s.signal,
                  s.interference, s.nearest_interference, s.sir, s.sir0,
                  s.serving_distance);
    os << buf;
  }
}

}  // namespace sirnet
