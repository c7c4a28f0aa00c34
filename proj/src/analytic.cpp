#include "sirnet/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sirnet {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return v;
}

bool integer_m(double m) { return m == std::floor(m) && m >= 1.0; }

}  // namespace

double ps_exact_adhoc_singular_ppp_rayleigh(double theta, double lambda, double b,
                                            double alpha) {
  check_theta(theta);
  const double d = delta_of(alpha);
  return std::exp(-kPi * lambda * std::pow(theta, d) * b * b *
                  std::tgamma(1.0 + d) * std::tgamma(1.0 - d));
}

double ps_exact_adhoc_singular_ppp_nakagami2(double theta, double lambda, double b,
                                             double alpha) {
  check_theta(theta);
  const double d = delta_of(alpha);
  const FadingModel f{2.0};
  const double c = kPi * lambda * f.moment(d) * std::tgamma(1.0 - d);
  const double u = c * std::pow(2.0, d) * b * b * std::pow(theta, d);
  return (u * d + 1.0) * std::exp(-u);
}

double laplace_interference_bounded_ppp_rayleigh(double s, double lambda,
                                                 double alpha, double epsilon) {
  if (s < 0.0) throw std::invalid_argument("laplace transform needs s >= 0");
  if (s == 0.0) return 1.0;
  const double d = delta_of(alpha);
  return std::exp(-kPi * lambda / sinc_delta(d) * s * std::pow(s + epsilon, d - 1.0));
}

double ps_exact_adhoc_bounded_ppp_rayleigh(double theta, double lambda, double b,
                                           double alpha, double epsilon) {
  check_theta(theta);
  const double s = (epsilon + std::pow(b, alpha)) * theta;
  return laplace_interference_bounded_ppp_rayleigh(s, lambda, alpha, epsilon);
}

double ps_exact_dup_adhoc_singular_ppp_rayleigh(double theta, double lambda, double b,
                                                double alpha,
                                                int colocated_interferers) {
  check_theta(theta);
  if (colocated_interferers < 1)
    throw std::invalid_argument("need at least one colocated interferer");
  const double d = delta_of(alpha);
  const FadingModel f{1.0};
  const double expo = kPi * lambda / 2.0 * std::pow(theta, d) * b * b *
                      f.pair_moment(d) * std::tgamma(1.0 - d);
  return std::pow(1.0 + theta, -colocated_interferers) * std::exp(-expo);
}

double ps_tail_dup_adhoc_bounded_ppp_rayleigh(double theta, double lambda, double b,
                                              double alpha, double epsilon) {
  check_theta(theta);
  const double d = delta_of(alpha);
  const double s1 = theta * (epsilon + std::pow(b, alpha));
  const double expo = kPi * lambda * (d + 1.0) / (2.0 * sinc_delta(d)) * s1 *
                      std::pow(s1 + epsilon, d - 1.0);
  return std::exp(-expo) / (1.0 + theta);
}

double interference_ccdf_tail(double y, double lambda, const FadingModel& fading,
                              double delta) {
  if (!(y > 0.0)) throw std::invalid_argument("interference_ccdf_tail: y must be positive");
  return kPi * lambda * fading.moment(delta) * std::pow(y, -delta);
}

double gamma_bar(int m, int i, double delta) {
  if (m < 1) throw std::invalid_argument("gamma_bar: m must be a positive integer");
  if (i < 0 || i > m) throw std::invalid_argument("gamma_bar: i must lie in [0, m]");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("gamma_bar: delta must lie in (0,1)");
  if (i < m) return delta * std::tgamma(static_cast<double>(m - i) + delta);
  return std::tgamma(1.0 + delta);
}

namespace {

TailLaw make_law(TailRegime regime, TailFamily family, double order,
                 std::optional<double> pre, PreConstantSource src, bool conjectured) {
  TailLaw law;
  law.regime = regime;
  law.family = family;
  law.order = order;
  law.pre_constant = pre;
  law.source = pre ? src : PreConstantSource::Unknown;
  law.conjectured = conjectured;
  return law;
}

/// Theorem-3 style constant for the duplicated cellular singular tail.
double dup_cellular_upper_pre(const NetworkScenario& sc, double palm) {
  const double d = sc.path_loss.delta();
  const double m = sc.fading.m;
  if (!integer_m(m))
    throw std::invalid_argument(
        "upper_tail_law: the duplicated cellular pre-constant requires integer Nakagami m");
  const int mi = static_cast<int>(m);
  double sum = 0.0;
  for (int i = 0; i <= mi; ++i)
    sum += binom(mi, i) * std::tgamma(m + i) * gamma_bar(mi, i, d);
  const double g = std::tgamma(m);
  return sc.lambda * kPi * std::pow(m, -d) / (2.0 * (m + d) * g * g) * palm * sum;
}

double gamma_ratio_pre(double m) {
  // lim P(h_a < t h_b)/t^m for iid gamma(m, 1/m): Gamma(2m) / (m Gamma(m)^2).
  return std::exp(std::lgamma(2.0 * m) - std::log(m) - 2.0 * std::lgamma(m));
}

}  // namespace

TailLaw lower_tail_law(const AsymptoteRequest& request) {
  const NetworkScenario& sc = request.scenario;
  sc.validate();
  if (request.regime != TailRegime::LowerTail)
    throw std::invalid_argument("lower_tail_law: request regime is not LowerTail");
  const double d = sc.path_loss.delta();
  const double m = sc.fading.m;
  const bool singular = sc.path_loss.kind == PathLossKind::Singular;
  const bool dup = sc.multiplicity == Multiplicity::Duplicated;
  const auto R = TailRegime::LowerTail;

  if (sc.topology == Topology::AdHoc) {
    if (singular) {
      if (request.mode == SirMetric::NearestOnly && dup)
        return make_law(R, TailFamily::PowerLaw, d, std::nullopt,
                        PreConstantSource::Unknown, false);
      const double pre =
          dup && request.mode == SirMetric::TotalInterference
              ? kPi * sc.lambda * sc.b * sc.b / 2.0 * sc.fading.pair_moment(d) *
                    sc.fading.moment(-d)
              : kPi * sc.lambda * sc.b * sc.b * sc.fading.moment(d) * sc.fading.moment(-d);
      return make_law(R, TailFamily::PowerLaw, d, pre, PreConstantSource::Exact, false);
    }
    // Bounded: order m, constant (m^(m-1)/Gamma(m)) (eps+b^a)^m E[I^m].
    if (request.mode == SirMetric::TotalInterference && request.aux.interference_m_moment) {
      const double c = std::pow(m, m - 1.0) / std::tgamma(m) *
                       std::pow(sc.path_loss.epsilon + std::pow(sc.b, sc.path_loss.alpha), m) *
                       *request.aux.interference_m_moment;
      return make_law(R, TailFamily::PowerLaw, m, c, PreConstantSource::Estimated, false);
    }
    return make_law(R, TailFamily::PowerLaw, m, std::nullopt, PreConstantSource::Unknown,
                    false);
  }

  // Cellular lower tails are fading-limited: order m in every variant.
  if (request.mode == SirMetric::NearestOnly && dup)
    return make_law(R, TailFamily::PowerLaw, m, gamma_ratio_pre(m),
                    PreConstantSource::Exact, false);
  return make_law(R, TailFamily::PowerLaw, m, std::nullopt, PreConstantSource::Unknown,
                  false);
}

TailLaw upper_tail_law(const AsymptoteRequest& request) {
  const NetworkScenario& sc = request.scenario;
  sc.validate();
  if (request.regime != TailRegime::UpperTail)
    throw std::invalid_argument("upper_tail_law: request regime is not UpperTail");
  const double d = sc.path_loss.delta();
  const double m = sc.fading.m;
  const bool singular = sc.path_loss.kind == PathLossKind::Singular;
  const bool dup = sc.multiplicity == Multiplicity::Duplicated;
  const bool ppp_rayleigh = sc.process == ProcessKind::PPP && m == 1.0;
  const auto R = TailRegime::UpperTail;

  if (request.mode == SirMetric::NearestOnly) {
    if (sc.topology == Topology::Cellular && singular && !dup) {
      if (!request.aux.mean_sq_second_nearest)
        throw std::invalid_argument(
            "upper_tail_law: needs mean_sq_second_nearest (run estimate_mean_sq_second_nearest)");
      const double pre = sc.lambda * kPi * sc.fading.moment(-d) *
                         *request.aux.mean_sq_second_nearest * sc.fading.moment(d);
      return make_law(R, TailFamily::PowerLaw, d, pre, PreConstantSource::Estimated, false);
    }
    if (sc.topology == Topology::Cellular && dup)
      return make_law(R, TailFamily::PowerLaw, m, gamma_ratio_pre(m),
                      PreConstantSource::Exact, false);
    return make_law(R, TailFamily::PowerLaw, m, std::nullopt, PreConstantSource::Unknown,
                    false);
  }

  if (sc.topology == Topology::AdHoc) {
    std::optional<double> A;
    if (ppp_rayleigh) {
      const FadingModel ray{1.0};
      if (singular && !dup)
        A = kPi * sc.lambda * sc.b * sc.b * std::tgamma(1.0 + d) * std::tgamma(1.0 - d);
      else if (singular && dup)
        A = kPi * sc.lambda / 2.0 * sc.b * sc.b * ray.pair_moment(d) * std::tgamma(1.0 - d);
      else if (!singular && !dup)
        A = kPi * sc.lambda / sinc_delta(d) *
            std::pow(sc.path_loss.epsilon + std::pow(sc.b, sc.path_loss.alpha), d);
      else
        A = kPi * sc.lambda * (d + 1.0) / (2.0 * sinc_delta(d)) *
            std::pow(sc.path_loss.epsilon + std::pow(sc.b, sc.path_loss.alpha), d);
    }
    return make_law(R, TailFamily::Exponential, d, A, PreConstantSource::Exact,
                    !ppp_rayleigh);
  }

  // Cellular.
  if (singular && !dup) {
    if (!request.aux.palm_inv_moment)
      throw std::invalid_argument(
          "upper_tail_law: needs palm_inv_moment (run estimate_palm_inv_moment)");
    if (request.aux.palm_variant != PalmVariant::SimpleProcess)
      throw std::invalid_argument(
          "upper_tail_law: palm moment was estimated with pair fades; scenario is simple");
    const double pre = kPi * sc.lambda * *request.aux.palm_inv_moment * sc.fading.moment(d);
    return make_law(R, TailFamily::PowerLaw, d, pre, PreConstantSource::Estimated, false);
  }
  if (singular && dup) {
    if (!request.aux.palm_inv_moment)
      throw std::invalid_argument(
          "upper_tail_law: needs palm_inv_moment (run estimate_palm_inv_moment)");
    if (request.aux.palm_variant != PalmVariant::DuplicatedProcess)
      throw std::invalid_argument(
          "upper_tail_law: palm moment must be estimated with colocated pair fades");
    const double pre = dup_cellular_upper_pre(sc, *request.aux.palm_inv_moment);
    return make_law(R, TailFamily::PowerLaw, m + d, pre, PreConstantSource::Estimated,
                    false);
  }
  // Bounded cellular: exponential, constants not established.
  return make_law(R, TailFamily::Exponential, d, std::nullopt, PreConstantSource::Unknown,
                  !ppp_rayleigh);
}

namespace {

double eval_eq8(const NetworkScenario& sc, double theta) {
  return ps_exact_adhoc_singular_ppp_rayleigh(theta, sc.lambda, sc.b, sc.path_loss.alpha);
}
double eval_nak2(const NetworkScenario& sc, double theta) {
  return ps_exact_adhoc_singular_ppp_nakagami2(theta, sc.lambda, sc.b, sc.path_loss.alpha);
}
double eval_bounded(const NetworkScenario& sc, double theta) {
  return ps_exact_adhoc_bounded_ppp_rayleigh(theta, sc.lambda, sc.b, sc.path_loss.alpha,
                                             sc.path_loss.epsilon);
}
double eval_dup(const NetworkScenario& sc, double theta) {
  return ps_exact_dup_adhoc_singular_ppp_rayleigh(theta, sc.lambda, sc.b,
                                                  sc.path_loss.alpha, 1);
}
double eval_dup_bounded(const NetworkScenario& sc, double theta) {
  return ps_tail_dup_adhoc_bounded_ppp_rayleigh(theta, sc.lambda, sc.b,
                                                sc.path_loss.alpha, sc.path_loss.epsilon);
}

}  // namespace

std::optional<ExactCurve> exact_success_curve(const NetworkScenario& scenario) {
  if (scenario.process != ProcessKind::PPP || scenario.topology != Topology::AdHoc ||
      scenario.duplicate_serving_only)
    return std::nullopt;
  const bool singular = scenario.path_loss.kind == PathLossKind::Singular;
  const bool dup = scenario.multiplicity == Multiplicity::Duplicated;
  const double m = scenario.fading.m;
  if (!dup && singular && m == 1.0)
    return ExactCurve{"adhoc-singular-ppp-rayleigh", false, &eval_eq8};
  if (!dup && singular && m == 2.0)
    return ExactCurve{"adhoc-singular-ppp-nakagami2", false, &eval_nak2};
  if (!dup && !singular && m == 1.0)
    return ExactCurve{"adhoc-bounded-ppp-rayleigh", false, &eval_bounded};
  if (dup && singular && m == 1.0)
    return ExactCurve{"dup-adhoc-singular-ppp-rayleigh", false, &eval_dup};
  if (dup && !singular && m == 1.0)
    return ExactCurve{"dup-adhoc-bounded-ppp-rayleigh-tail", true, &eval_dup_bounded};
  return std::nullopt;
}

}  // namespace sirnet
