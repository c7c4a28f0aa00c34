#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "sirnet/rng.hpp"

namespace sirnet {

/// delta = 2/alpha. Requires alpha > 2 (interference diverges otherwise).
double delta_of(double alpha);

/// sin(pi d)/(pi d) on (0,1), series-evaluated near 0 for stability.
double sinc_delta(double delta);

/// E[X^t] for X ~ gamma(shape, scale) = scale^t Gamma(shape+t)/Gamma(shape).
/// Requires shape + t > 0; returns exactly 1 at t = 0.
double gamma_moment(double shape, double scale, double t);

enum class PathLossKind { Singular, Bounded };

/// Distance -> mean received power. Singular: r^-alpha. Bounded: 1/(eps + r^alpha).
struct PathLossModel {
  PathLossKind kind = PathLossKind::Singular;
  double alpha = 4.0;
  double epsilon = 0.0;  // used by Bounded only

  static PathLossModel singular(double alpha);
  static PathLossModel bounded(double alpha, double epsilon);

  double delta() const { return 2.0 / alpha; }
  double operator()(double r) const;

  /// Same law evaluated on a squared distance (what samplers produce).
  double loss_from_r2(double r2) const {
    const double ra = pow_half_alpha(r2);
    if (kind == PathLossKind::Singular) {
      if (r2 <= 0.0) throw std::domain_error("singular path loss at r = 0");
      return 1.0 / ra;
    }
    return 1.0 / (epsilon + ra);
  }

  void validate() const;

 private:
  /// r2^(alpha/2) with fast paths for the common even exponents.
  double pow_half_alpha(double r2) const {
    const double h = 0.5 * alpha;
    if (h == 2.0) return r2 * r2;
    if (h == 1.5) return r2 * std::sqrt(r2);
    if (h == 3.0) return r2 * r2 * r2;
    return std::pow(r2, h);
  }
};

/// Nakagami-m power fading: h ~ gamma(m, 1/m), unit mean. m = 1 is Rayleigh.
struct FadingModel {
  double m = 1.0;

  explicit FadingModel(double m_ = 1.0);

  /// E[h^t] = gamma_moment(m, 1/m, t). Requires m + t > 0.
  double moment(double t) const;
  /// E[(h_a + h_b)^t] for iid fades: the sum is gamma(2m, 1/m).
  double pair_moment(double t) const;

  bool is_integer() const {
    return m == std::floor(m) && m >= 1.0 && m <= 64.0;
  }
};

/// Stateful fade sampler (integer m uses a product-of-uniforms draw; one log).
class FadeSampler {
 public:
  explicit FadeSampler(const FadingModel& f)
      : k_(f.is_integer() && f.m <= 16.0 ? static_cast<int>(f.m) : 0),
        inv_m_(1.0 / f.m),
        gamma_(f.m, 1.0 / f.m) {}

  double operator()(rng::Engine& g) {
    if (k_ > 0) {
      double prod = 1.0;
      for (int i = 0; i < k_; ++i) prod *= rng::uniform01(g);
      return -std::log(prod) * inv_m_;
    }
    return gamma_(g);
  }

 private:
  int k_;
  double inv_m_;
  std::gamma_distribution<double> gamma_;
};

enum class Topology { AdHoc, Cellular };
enum class Multiplicity { Simple, Duplicated };
enum class ProcessKind { PPP, MaternII, PerturbedLattice };

struct ProcessParams {
  double matern_parent_intensity = 0.0;
  double matern_hardcore_radius = 0.0;
  double lattice_spacing = 0.0;
  double lattice_jitter_sd = 0.0;
};

/// Full model selector. lambda is the total transmitter intensity, counting
/// duplicates: the support (distinct-location) process has intensity
/// lambda/2 when Duplicated.
struct NetworkScenario {
  Topology topology = Topology::AdHoc;
  Multiplicity multiplicity = Multiplicity::Simple;
  ProcessKind process = ProcessKind::PPP;
  double lambda = 1.0;
  double b = 1.0;  // ad hoc link distance; ignored for Cellular
  PathLossModel path_loss{};
  FadingModel fading{1.0};
  ProcessParams process_params{};
  // Edge-user variant: simple interferer field, but the serving location
  // carries one colocated interferer. Cellular + Simple only.
  bool duplicate_serving_only = false;

  double support_intensity() const {
    return multiplicity == Multiplicity::Duplicated ? lambda / 2.0 : lambda;
  }
  int points_per_location() const {
    return multiplicity == Multiplicity::Duplicated ? 2 : 1;
  }

  void validate() const;
};

enum class TailRegime { LowerTail, UpperTail };
enum class TailFamily { PowerLaw, Exponential };
enum class PreConstantSource { Exact, Estimated, Unknown };

/// Asymptotic regime descriptor. order is always positive:
///   PowerLaw lower:   1 - P_s(t) = Theta(t^order)
///   PowerLaw upper:   P_s(t)     = Theta(t^-order)
///   Exponential:      P_s(t)     = exp(-Theta(t^order)), order = delta;
///                     pre_constant (when known) is the Theta coefficient.
struct TailLaw {
  TailRegime regime = TailRegime::LowerTail;
  TailFamily family = TailFamily::PowerLaw;
  double order = 0.0;
  std::optional<double> pre_constant{};
  PreConstantSource source = PreConstantSource::Unknown;
  // True when the family/order for this model is extrapolated beyond the
  // cases it has been established for (non-Poisson or non-Rayleigh
  // exponential entries).
  bool conjectured = false;
};

std::string to_string(Topology t);
std::string to_string(Multiplicity m);
std::string to_string(ProcessKind p);
std::string to_string(PathLossKind k);
std::string to_string(TailRegime r);
std::string to_string(TailFamily f);
std::string to_string(PreConstantSource s);

}  // namespace sirnet
