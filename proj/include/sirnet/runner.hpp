#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sirnet/estimator.hpp"

namespace sirnet {

struct ThetaGridSpec {
  bool auto_range = true;  // derive the range from sample quantiles
  double theta_min = 1e-3;
  double theta_max = 1e3;
  int points_per_decade = 60;
};

struct Tolerances {
  double order_abs = 0.1;  // fitted order vs symbolic, power-law cells
  // The duplicated-cellular-singular upper order at m >= 2 sits deeper in its
  // pre-asymptotic regime; it gets its own band.
  double order_abs_dup_cellular_upper = 0.15;
  double ci_coverage_min = 0.95;  // exact-curve points inside the CI
  double ci_confidence = 0.997;
};

struct AuxConfig {
  std::size_t palm_samples = 20000;
  double palm_rel_tol = 1e-3;
  std::size_t moment_samples = 20000;
  std::size_t r2bar_samples = 200000;
};

enum class Battery { None, TableI, TableII, Conjectures, EdgeUser };

struct RunConfig {
  NetworkScenario scenario{};
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  ThetaGridSpec grid{};
  double truncation_rel_tol = 1e-2;
  std::string output_dir = "out";
  Battery battery = Battery::None;
  std::vector<double> battery_m{1.0, 2.0};
  std::size_t battery_samples_m2 = 0;  // 0: same as samples
  Tolerances tol{};
  AuxConfig aux{};
  ClassifyConfig classify{};
  unsigned threads = 0;
  bool dump_samples = false;
};

/// Parse a JSON config document; collects every violation into one
/// std::invalid_argument message.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

struct VerdictRow {
  std::string cell;     // e.g. "dup-cellular-singular.m1.upper.order"
  std::string expected;
  std::string observed;
  double tolerance = 0.0;
  bool pass = false;
  bool caveat = false;       // reported instead of FAIL (regime unreachable)
  std::string note;
};

struct RunReport {
  bool all_pass = true;
  std::vector<VerdictRow> rows;
  std::string output_dir;
};

/// Single-scenario run or battery dispatch per config.battery. Writes CCDF
/// CSVs, fit/comparison JSON and a manifest under config.output_dir.
RunReport run(const RunConfig& config);

/// One run per value of parameter ("lambda", "alpha", "epsilon", "m", "b")
/// plus a summary CSV of fitted exponents vs the parameter.
RunReport sweep(const RunConfig& config, const std::string& parameter,
                const std::vector<double>& values);

std::string to_string(Battery b);

}  // namespace sirnet
