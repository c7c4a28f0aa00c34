#include "sirnet/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sirnet/point_process.hpp"

namespace sirnet {

namespace {

constexpr double kPi = std::numbers::pi;

double field_value(const SirSample& s, SampleField f) {
  switch (f) {
    case SampleField::Sir: return s.sir;
    case SampleField::Sir0: return s.sir0;
    case SampleField::Interference: return s.interference;
    default: return s.nearest_interference;
  }
}

CcdfEstimate ccdf_from_sorted(std::vector<double>&& sorted, std::size_t excluded,
                              std::span<const double> grid, double confidence) {
  if (sorted.empty()) throw std::invalid_argument("estimate_ccdf: empty sample set");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("estimate_ccdf: confidence must lie in (0,1)");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("estimate_ccdf: theta grid must be sorted");

  CcdfEstimate est;
  est.thetas.assign(grid.begin(), grid.end());
  est.n = sorted.size();
  est.excluded = excluded;
  est.confidence = confidence;
  const double n = static_cast<double>(sorted.size());
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double z2 = z * z;
  est.p_hat.reserve(grid.size());
  est.ci_low.reserve(grid.size());
  est.ci_high.reserve(grid.size());
  for (double t : grid) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    const double p = static_cast<double>(sorted.end() - it) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double hw = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    est.p_hat.push_back(p);
    est.ci_low.push_back(std::max(0.0, center - hw));
    est.ci_high.push_back(std::min(1.0, center + hw));
  }
  return est;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  // Acklam's rational approximation, |relative error| < 1.2e-8.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) return -normal_quantile(1.0 - p);
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::vector<double> log_grid(double theta_min, double theta_max, int points_per_decade) {
  if (!(theta_min > 0.0) || !(theta_max > theta_min))
    throw std::invalid_argument("log_grid: need 0 < theta_min < theta_max");
  if (points_per_decade < 1) throw std::invalid_argument("log_grid: points_per_decade >= 1");
  const double decades = std::log10(theta_max / theta_min);
  const int count = std::max(2, static_cast<int>(std::lround(decades * points_per_decade)) + 1);
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = decades / (count - 1);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = theta_min * std::pow(10.0, step * i);
  grid.back() = theta_max;
  return grid;
}

CcdfEstimate estimate_ccdf(std::span<const SirSample> samples,
                           std::span<const double> theta_grid, SampleField field,
                           double confidence) {
  std::vector<double> values;
  values.reserve(samples.size());
  std::size_t excluded = 0;
  for (const auto& s : samples) {
    const double v = field_value(s, field);
    if (s.no_interferer || !std::isfinite(v)) {
      ++excluded;
      continue;
    }
    values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  return ccdf_from_sorted(std::move(values), excluded, theta_grid, confidence);
}

CcdfEstimate estimate_ccdf_values(std::span<const double> values,
                                  std::span<const double> theta_grid,
                                  double confidence) {
  std::vector<double> v;
  v.reserve(values.size());
  std::size_t excluded = 0;
  for (double x : values) {
    if (!std::isfinite(x)) {
      ++excluded;
      continue;
    }
    v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  return ccdf_from_sorted(std::move(v), excluded, theta_grid, confidence);
}

namespace {

struct FitData {
  std::vector<double> x, y, w;
};

enum class Transform { PowerLower, PowerUpper, ExpUpper, ExpLower };

// y(p) and the CI mapped through the same transform; monotonicity decides
// which CI edge lands where.
bool transform_point(Transform tr, double p, double lo, double hi, double& y,
                     double& y_lo, double& y_hi) {
  const double eps = 1e-15;
  lo = std::clamp(lo, eps, 1.0 - eps);
  hi = std::clamp(hi, eps, 1.0 - eps);
  switch (tr) {
    case Transform::PowerLower:
      if (!(p < 1.0 && p > 0.0)) return false;
      y = std::log(1.0 - p);
      y_lo = std::log(1.0 - hi);
      y_hi = std::log(1.0 - lo);
      return true;
    case Transform::PowerUpper:
      if (!(p > 0.0 && p < 1.0)) return false;
      y = std::log(p);
      y_lo = std::log(lo);
      y_hi = std::log(hi);
      return true;
    case Transform::ExpUpper:
      if (!(p > 0.0 && p < 1.0)) return false;
      y = std::log(-std::log(p));
      y_lo = std::log(-std::log(hi));
      y_hi = std::log(-std::log(lo));
      return true;
    case Transform::ExpLower:
      if (!(p > 0.0 && p < 1.0)) return false;
      y = std::log(-std::log(1.0 - p));
      y_lo = std::log(-std::log(1.0 - lo));
      y_hi = std::log(-std::log(1.0 - hi));
      return true;
  }
  return false;
}

FitData collect(const CcdfEstimate& est, const FitWindow& window, Transform tr,
                FitWeighting weighting) {
  FitData d;
  for (std::size_t i = 0; i < est.thetas.size(); ++i) {
    const double t = est.thetas[i];
    if (t < window.theta_min || t > window.theta_max) continue;
    const double p = est.p_hat[i];
    if (!(p > 0.0 && p < 1.0)) continue;
    double y, ylo, yhi;
    if (!transform_point(tr, p, est.ci_low[i], est.ci_high[i], y, ylo, yhi)) continue;
    if (!std::isfinite(y)) continue;
    double w = 1.0;
    if (weighting == FitWeighting::CiLog) {
      const double width = yhi - ylo;
      if (!(width > 0.0) || !std::isfinite(width)) continue;
      w = 1.0 / (width * width);
    } else if (weighting == FitWeighting::CiLinear) {
      const double width = est.ci_high[i] - est.ci_low[i];
      if (!(width > 0.0)) continue;
      w = 1.0 / (width * width);
    }
    d.x.push_back(std::log(t));
    d.y.push_back(y);
    d.w.push_back(w);
  }
  return d;
}

struct Wls {
  double slope = 0.0, intercept = 0.0, slope_se = 0.0, r2 = 0.0;
  std::size_t points = 0;
};

Wls wls_fit(const FitData& d) {
  Wls out;
  out.points = d.x.size();
  if (d.x.size() < 5)
    throw std::runtime_error("tail fit: regime unreachable at this sample size");
  const std::size_t n = d.x.size();
  double sw = 0.0;
  for (double w : d.w) sw += w;
  double xb = 0.0, yb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xb += d.w[i] * d.x[i];
    yb += d.w[i] * d.y[i];
  }
  xb /= sw;
  yb /= sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = d.x[i] - xb, dy = d.y[i] - yb;
    sxx += d.w[i] * dx * dx;
    sxy += d.w[i] * dx * dy;
    syy += d.w[i] * dy * dy;
  }
  if (!(sxx > 0.0)) throw std::runtime_error("tail fit: degenerate window");
  out.slope = sxy / sxx;
  out.intercept = yb - out.slope * xb;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = d.y[i] - (out.intercept + out.slope * d.x[i]);
    ssr += d.w[i] * r * r;
  }
  out.r2 = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
  const double sigma2 = n > 2 ? ssr / (static_cast<double>(n - 2)) : 0.0;
  out.slope_se = std::sqrt(sigma2 / sxx * (sw / n) / (sw / n));
  // slope_se uses the weighted residual scale; weights are relative only.
  out.slope_se = std::sqrt(sigma2 / sxx);
  return out;
}

}  // namespace

TailFit fit_power_tail(const CcdfEstimate& est, TailRegime regime,
                       const FitWindow& window, FitWeighting weighting) {
  const Transform tr =
      regime == TailRegime::LowerTail ? Transform::PowerLower : Transform::PowerUpper;
  const Wls fit = wls_fit(collect(est, window, tr, weighting));
  TailFit out;
  out.family = TailFamily::PowerLaw;
  out.exponent = fit.slope;
  out.exponent_se = fit.slope_se;
  out.intercept = fit.intercept;
  out.window = window;
  out.r_squared = fit.r2;
  out.points = fit.points;
  return out;
}

TailFit fit_exponential_tail(const CcdfEstimate& est, const FitWindow& window,
                             FitWeighting weighting) {
  const Wls fit = wls_fit(collect(est, window, Transform::ExpUpper, weighting));
  TailFit out;
  out.family = TailFamily::Exponential;
  out.exponent = fit.slope;
  out.exponent_se = fit.slope_se;
  out.intercept = fit.intercept;
  out.window = window;
  out.r_squared = fit.r2;
  out.points = fit.points;
  return out;
}

std::optional<FitWindow> auto_fit_window(const CcdfEstimate& est, TailRegime regime,
                                         WindowProfile profile) {
  const double n = static_cast<double>(est.n);
  const double floor = 10.0 / n;
  double cap = profile == WindowProfile::Bulk ? 0.2 : 4000.0 / n;
  cap = std::min(cap, 0.2);
  if (!(cap > floor)) return std::nullopt;
  std::size_t count = 0;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < est.thetas.size(); ++i) {
    const double p = est.p_hat[i];
    if (!(p > 0.0 && p < 1.0)) continue;
    const double tail = regime == TailRegime::UpperTail ? p : 1.0 - p;
    if (tail < floor || tail > cap) continue;
    if (count == 0) lo = est.thetas[i];
    hi = est.thetas[i];
    ++count;
  }
  if (count < 5) return std::nullopt;
  return FitWindow{lo, hi};
}

TailClass classify_tail(const CcdfEstimate& est, TailRegime regime,
                        const FitWindow& window, const ClassifyConfig& cfg) {
  const Transform pow_tr =
      regime == TailRegime::LowerTail ? Transform::PowerLower : Transform::PowerUpper;
  const Transform exp_tr =
      regime == TailRegime::LowerTail ? Transform::ExpLower : Transform::ExpUpper;

  double r2_pow = -1.0, r2_exp = -1.0;
  try {
    const Wls f = wls_fit(collect(est, window, pow_tr, FitWeighting::CiLog));
    // A power law must decay the right way in its regime.
    const bool valid = regime == TailRegime::LowerTail ? f.slope > 0.0 : f.slope < 0.0;
    if (valid) r2_pow = f.r2;
  } catch (const std::runtime_error&) {
  }
  try {
    const Wls f = wls_fit(collect(est, window, exp_tr, FitWeighting::CiLog));
    // exp(-Theta(t^s)) needs s > 0 for the upper tail; a lower-tail
    // exponential would need the -log(outage) to grow as theta falls.
    const bool valid = regime == TailRegime::UpperTail ? f.slope > 0.0 : f.slope < 0.0;
    if (valid) r2_exp = f.r2;
  } catch (const std::runtime_error&) {
  }

  if (r2_pow < 0.0 && r2_exp < 0.0) return TailClass::Inconclusive;
  if (r2_pow >= 0.0 && r2_exp < 0.0)
    return r2_pow >= cfg.r2_floor ? TailClass::PowerLaw : TailClass::Inconclusive;
  if (r2_exp >= 0.0 && r2_pow < 0.0)
    return r2_exp >= cfg.r2_floor ? TailClass::Exponential : TailClass::Inconclusive;
  if (r2_pow >= cfg.r2_floor && r2_pow >= r2_exp + cfg.r2_margin) return TailClass::PowerLaw;
  if (r2_exp >= cfg.r2_floor && r2_exp >= r2_pow + cfg.r2_margin)
    return TailClass::Exponential;
  return TailClass::Inconclusive;
}

namespace {

// Palm realizations of the support process: distances (squared) from a
// typical point (removed) to the others.
void sample_palm_r2(const NetworkScenario& sc, double window_radius, rng::Engine& g,
                    std::vector<double>& out) {
  switch (sc.process) {
    case ProcessKind::PPP:
      // Slivnyak: the reduced Palm version of a PPP is the PPP itself.
      detail::sample_ppp_r2(sc.support_intensity(), window_radius, g, out);
      return;
    case ProcessKind::MaternII: {
      const double lp = sc.process_params.matern_parent_intensity;
      const double rhc = sc.process_params.matern_hardcore_radius;
      const Window w{window_radius};
      for (;;) {
        // Condition on a retained point at the origin: give the origin a
        // parent mark and replay the dependent thinning against it.
        rng::Engine probe = g;  // keep g advancing even across rejections
        const double origin_mark = rng::uniform01(g);
        auto parents = sample_matern_ii(lp, rhc, w, g);
        (void)probe;
        // Origin survives iff no parent with a smaller mark lies within rhc.
        // sample_matern_ii already thinned parents among themselves; redo the
        // check against the origin for the surviving points.
        bool origin_ok = true;
        out.clear();
        for (const auto& q : parents.points) {
          const double r2 = q.x * q.x + q.y * q.y;
          if (r2 < rhc * rhc) {
            // A retained point this close always has some mark; the origin
            // survives only if its own mark is smaller.
            const double other_mark = rng::uniform01(g);
            if (other_mark < origin_mark) {
              origin_ok = false;
              break;
            }
            continue;  // origin wins; the competitor is removed
          }
          out.push_back(r2);
        }
        if (origin_ok) return;
      }
    }
    case ProcessKind::PerturbedLattice: {
      const double s = sc.process_params.lattice_spacing;
      const double sd = sc.process_params.lattice_jitter_sd;
      std::normal_distribution<double> jitter(0.0, sd);
      const double margin = 6.0 * sd + s;
      const long K = static_cast<long>(std::ceil((window_radius + margin) / s));
      double j0x = 0.0, j0y = 0.0;
      if (sd > 0.0) {
        j0x = jitter(g);
        j0y = jitter(g);
      }
      out.clear();
      for (long i = -K; i <= K; ++i) {
        for (long j = -K; j <= K; ++j) {
          if (i == 0 && j == 0) continue;
          double x = static_cast<double>(i) * s - j0x;
          double y = static_cast<double>(j) * s - j0y;
          if (sd > 0.0) {
            x += jitter(g);
            y += jitter(g);
          }
          const double r2 = x * x + y * y;
          if (r2 <= window_radius * window_radius) out.push_back(r2);
        }
      }
      return;
    }
  }
  throw std::logic_error("sample_palm_r2: unknown process");
}

MomentEstimate finish(double sum, double sum_sq, std::size_t n, double window) {
  MomentEstimate e;
  e.n = n;
  e.window_radius = window;
  e.value = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(n) - e.value * e.value);
  e.se = std::sqrt(var / static_cast<double>(n));
  e.stabilized = e.value != 0.0 && e.se / std::abs(e.value) <= 0.10;
  return e;
}

}  // namespace

MomentEstimate estimate_palm_inv_moment(const NetworkScenario& scenario, double delta,
                                        std::size_t n, std::uint64_t seed,
                                        double rel_tol) {
  scenario.validate();
  if (scenario.path_loss.kind != PathLossKind::Singular)
    throw std::invalid_argument("estimate_palm_inv_moment: singular path loss only");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("estimate_palm_inv_moment: delta must lie in (0,1)");
  if (n == 0) throw std::invalid_argument("estimate_palm_inv_moment: n must be >= 1");
  const double W = required_window_radius(scenario, rel_tol);
  FadeSampler fade(scenario.fading);
  const int mult = scenario.points_per_location();
  std::vector<double> r2;
  double sum = 0.0, sum_sq = 0.0;
  constexpr std::size_t kChunk = 4096;
  for (std::size_t i = 0; i < n; ++i) {
    rng::Engine g = rng::make_engine(seed, i / kChunk);
    if (i % kChunk == 0) {
      // one engine per chunk; replay position inside the chunk
    }
    static thread_local rng::Engine engine;
    (void)g;
    break;
  }
  // Chunked deterministic loop.
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::size_t done = 0;
  for (std::size_t c = 0; c < chunks && done < n; ++c) {
    rng::Engine g = rng::make_engine(seed, c);
    const std::size_t hi = std::min(n - done, kChunk);
    for (std::size_t k = 0; k < hi; ++k, ++done) {
      sample_palm_r2(scenario, W, g, r2);
      double I = 0.0;
      for (double q : r2) {
        double f = fade(g);
        for (int j = 1; j < mult; ++j) f += fade(g);
        I += f * scenario.path_loss.loss_from_r2(q);
      }
      const double v = std::pow(I, -delta);
      sum += v;
      sum_sq += v * v;
    }
  }
  return finish(sum, sum_sq, n, W);
}

MomentEstimate estimate_interference_moment(const NetworkScenario& scenario, int m,
                                            std::size_t n, std::uint64_t seed,
                                            double rel_tol) {
  scenario.validate();
  if (scenario.path_loss.kind != PathLossKind::Bounded)
    throw std::invalid_argument(
        "estimate_interference_moment: bounded path loss only (singular moments may diverge)");
  if (m < 1) throw std::invalid_argument("estimate_interference_moment: m must be >= 1");
  if (n == 0) throw std::invalid_argument("estimate_interference_moment: n must be >= 1");
  const double W = required_window_radius(scenario, rel_tol);
  std::vector<double> r2;
  double sum = 0.0, sum_sq = 0.0;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::size_t done = 0;
  for (std::size_t c = 0; c < chunks && done < n; ++c) {
    rng::Engine g = rng::make_engine(seed, c);
    const std::size_t hi = std::min(n - done, kChunk);
    for (std::size_t k = 0; k < hi; ++k, ++done) {
      detail::sample_support_r2(scenario, W, g, r2);
      const SirSample s = detail::sir_from_r2(scenario, r2, g);
      const double v = std::pow(s.interference, m);
      sum += v;
      sum_sq += v * v;
    }
  }
  return finish(sum, sum_sq, n, W);
}

MomentEstimate estimate_mean_sq_second_nearest(const NetworkScenario& scenario,
                                               std::size_t n, std::uint64_t seed) {
  scenario.validate();
  if (scenario.topology != Topology::Cellular)
    throw std::invalid_argument("estimate_mean_sq_second_nearest: cellular scenarios only");
  if (n == 0) throw std::invalid_argument("estimate_mean_sq_second_nearest: n must be >= 1");
  // Window sized so the Palm pattern is essentially never empty.
  double W = 0.0;
  switch (scenario.process) {
    case ProcessKind::PPP:
    case ProcessKind::MaternII:
      W = std::sqrt(40.0 / (kPi * scenario.support_intensity())) +
          scenario.process_params.matern_hardcore_radius;
      break;
    case ProcessKind::PerturbedLattice:
      W = 4.0 * scenario.process_params.lattice_spacing +
          8.0 * scenario.process_params.lattice_jitter_sd;
      break;
  }
  std::vector<double> r2;
  double sum = 0.0, sum_sq = 0.0;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::size_t done = 0;
  for (std::size_t c = 0; c < chunks && done < n; ++c) {
    rng::Engine g = rng::make_engine(seed, c);
    const std::size_t hi = std::min(n - done, kChunk);
    for (std::size_t k = 0; k < hi; ++k, ++done) {
      double best = std::numeric_limits<double>::infinity();
      do {
        sample_palm_r2(scenario, W, g, r2);
        for (double q : r2) best = std::min(best, q);
      } while (!std::isfinite(best));
      sum += best;
      sum_sq += best * best;
    }
  }
  return finish(sum, sum_sq, n, W);
}

void write_ccdf_csv(std::ostream& os, const CcdfEstimate& est) {
  os << "theta,p_hat,ci_low,ci_high\n";
  char buf[120];
  for (std::size_t i = 0; i < est.thetas.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e\n", est.thetas[i], est.p_hat[i],
                  est.ci_low[i], est.ci_high[i]);
    os << buf;
  }
}

}  // namespace sirnet
