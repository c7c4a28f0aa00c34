#include "sirnet/model.hpp"

#include <cmath>
#include <numbers>

namespace sirnet {

double delta_of(double alpha) {
  if (alpha <= 2.0)
    throw std::domain_error("delta_of: alpha must exceed 2 (interference diverges)");
  return 2.0 / alpha;
}

double sinc_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("sinc_delta: delta must lie in (0,1)");
  const double x = std::numbers::pi * delta;
  if (x < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

double gamma_moment(double shape, double scale, double t) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma_moment: shape and scale must be positive");
  if (!(shape + t > 0.0))
    throw std::domain_error("gamma_moment: shape + t <= 0, moment diverges");
  if (t == 0.0) return 1.0;
  return std::exp(t * std::log(scale) + std::lgamma(shape + t) - std::lgamma(shape));
}

PathLossModel PathLossModel::singular(double alpha) {
  PathLossModel m{PathLossKind::Singular, alpha, 0.0};
  m.validate();
  return m;
}

PathLossModel PathLossModel::bounded(double alpha, double epsilon) {
  PathLossModel m{PathLossKind::Bounded, alpha, epsilon};
  m.validate();
  return m;
}

void PathLossModel::validate() const {
  if (!(alpha > 2.0))
    throw std::invalid_argument("PathLossModel: alpha must exceed 2");
  if (kind == PathLossKind::Bounded && !(epsilon > 0.0))
    throw std::invalid_argument("PathLossModel: bounded model needs epsilon > 0");
  if (kind == PathLossKind::Singular && epsilon != 0.0)
    throw std::invalid_argument("PathLossModel: singular model ignores epsilon; set it to 0");
}

double PathLossModel::operator()(double r) const {
  if (r < 0.0) throw std::invalid_argument("path_loss: negative distance");
  return loss_from_r2(r * r);
}

FadingModel::FadingModel(double m_) : m(m_) {
  if (!(m >= 0.5))
    throw std::invalid_argument("FadingModel: Nakagami m must be >= 0.5");
}

double FadingModel::moment(double t) const { return gamma_moment(m, 1.0 / m, t); }

double FadingModel::pair_moment(double t) const {
  return gamma_moment(2.0 * m, 1.0 / m, t);
}

void NetworkScenario::validate() const {
  if (!(lambda > 0.0))
    throw std::invalid_argument("NetworkScenario: lambda must be positive");
  if (topology == Topology::AdHoc && !(b > 0.0))
    throw std::invalid_argument("NetworkScenario: ad hoc link distance b must be positive");
  path_loss.validate();
  if (!(fading.m >= 0.5))
    throw std::invalid_argument("NetworkScenario: Nakagami m must be >= 0.5");
  if (process == ProcessKind::MaternII) {
    if (!(process_params.matern_parent_intensity > 0.0) ||
        !(process_params.matern_hardcore_radius >= 0.0))
      throw std::invalid_argument("NetworkScenario: Matern II needs parent intensity > 0 and hardcore radius >= 0");
  }
  if (process == ProcessKind::PerturbedLattice) {
    if (!(process_params.lattice_spacing > 0.0) ||
        !(process_params.lattice_jitter_sd >= 0.0))
      throw std::invalid_argument("NetworkScenario: lattice needs spacing > 0 and jitter sd >= 0");
  }
  if (duplicate_serving_only) {
    if (topology != Topology::Cellular || multiplicity != Multiplicity::Simple)
      throw std::invalid_argument("NetworkScenario: duplicate_serving_only requires a simple cellular scenario");
  }
}

std::string to_string(Topology t) {
  return t == Topology::AdHoc ? "adhoc" : "cellular";
}
std::string to_string(Multiplicity m) {
  return m == Multiplicity::Simple ? "simple" : "duplicated";
}
std::string to_string(ProcessKind p) {
  switch (p) {
    case ProcessKind::PPP: return "ppp";
    case ProcessKind::MaternII: return "matern2";
    default: return "lattice";
  }
}
std::string to_string(PathLossKind k) {
  return k == PathLossKind::Singular ? "singular" : "bounded";
}
std::string to_string(TailRegime r) {
  return r == TailRegime::LowerTail ? "lower" : "upper";
}
std::string to_string(TailFamily f) {
  return f == TailFamily::PowerLaw ? "power" : "exponential";
}
std::string to_string(PreConstantSource s) {
  switch (s) {
    case PreConstantSource::Exact: return "exact";
    case PreConstantSource::Estimated: return "estimated";
    default: return "unknown";
  }
}

}  // namespace sirnet
