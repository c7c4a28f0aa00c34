#pragma once

#include <optional>

#include "sirnet/model.hpp"

namespace sirnet {

// Closed-form Poisson success probabilities. theta > 0 throughout; lambda is
// the total intensity (duplicated models count both points of a pair).

/// Simple ad hoc, singular loss, PPP, Rayleigh:
/// exp(-pi l t^d b^2 Gamma(1+d) Gamma(1-d)).
double ps_exact_adhoc_singular_ppp_rayleigh(double theta, double lambda,
                                            double b, double alpha);

/// Same model with Nakagami-2 fading:
/// (c d 2^d b^2 t^d + 1) exp(-c 2^d b^2 t^d), c = pi l E[h^d] Gamma(1-d).
double ps_exact_adhoc_singular_ppp_nakagami2(double theta, double lambda,
                                             double b, double alpha);

/// Laplace transform of bounded-loss PPP Rayleigh interference:
/// exp(-(pi l / sinc d) s (s+eps)^(d-1)).
double laplace_interference_bounded_ppp_rayleigh(double s, double lambda,
                                                 double alpha, double epsilon);

/// Bounded ad hoc PPP Rayleigh: the Laplace transform at s = (eps+b^a) t.
double ps_exact_adhoc_bounded_ppp_rayleigh(double theta, double lambda,
                                           double b, double alpha,
                                           double epsilon);

/// Duplicated ad hoc, singular, PPP Rayleigh:
/// (1+t)^-k exp(-(pi l / 2) t^d b^2 E[(ha+hb)^d] Gamma(1-d)),
/// k = number of interferers colocated with the desired transmitter.
double ps_exact_dup_adhoc_singular_ppp_rayleigh(double theta, double lambda,
                                                double b, double alpha,
                                                int colocated_interferers = 1);

/// Duplicated ad hoc, bounded, PPP Rayleigh — large-theta asymptote:
/// (1+t)^-1 exp(-(pi l (d+1) / (2 sinc d)) s1 (s1+eps)^(d-1)), s1 = t(eps+b^a).
double ps_tail_dup_adhoc_bounded_ppp_rayleigh(double theta, double lambda,
                                              double b, double alpha,
                                              double epsilon);

/// Asymptotic CCDF of the interference (and of the nearest interferer's
/// strength): pi l E[h^d] y^-d as y -> infinity.
double interference_ccdf_tail(double y, double lambda, const FadingModel& fading,
                              double delta);

/// Gamma-bar of the duplicated-cellular tail constant:
/// d Gamma(m-i+d) for i < m, Gamma(1+d) for i = m. Requires 0 <= i <= m.
double gamma_bar(int m, int i, double delta);

/// Which Palm construction produced an estimated E_o!(I_inf^-d): plain point
/// fades (simple) or colocated-pair fades (duplicated).
enum class PalmVariant { SimpleProcess, DuplicatedProcess };

struct AuxMoments {
  std::optional<double> palm_inv_moment{};   // E_o!(I_inf^-d)
  PalmVariant palm_variant = PalmVariant::SimpleProcess;
  std::optional<double> interference_m_moment{};    // E[I^m], bounded models
  std::optional<double> mean_sq_second_nearest{};   // E[R2bar^2], Palm nearest
};

enum class SirMetric { TotalInterference, NearestOnly };

struct AsymptoteRequest {
  NetworkScenario scenario{};
  TailRegime regime = TailRegime::LowerTail;
  SirMetric mode = SirMetric::TotalInterference;
  AuxMoments aux{};
};

/// theta -> 0 law for the requested model (order per the model matrix;
/// pre-constant Exact where a formula exists, Estimated via aux moments,
/// Unknown otherwise).
TailLaw lower_tail_law(const AsymptoteRequest& request);

/// theta -> infinity law. Missing aux moments required for a pre-constant
/// raise std::invalid_argument naming the estimator to run.
TailLaw upper_tail_law(const AsymptoteRequest& request);

/// Exact P_s(theta) when a closed form exists for the scenario (PPP cases
/// above). asymptotic_only marks the Eq-18-style large-theta form.
struct ExactCurve {
  const char* name;
  bool asymptotic_only;
  double (*eval)(const NetworkScenario&, double theta);
};
std::optional<ExactCurve> exact_success_curve(const NetworkScenario& scenario);

}  // namespace sirnet
