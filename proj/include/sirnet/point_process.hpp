#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sirnet/model.hpp"
#include "sirnet/rng.hpp"

namespace sirnet {

/// Disk simulation window centered at the origin.
struct Window {
  double radius = 1.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Realization of a stationary point process on a disk window. Locations are
/// pairwise distinct; multiplicity 1 throughout for simple patterns, 2 for
/// duplicated ones.
struct PointPattern {
  std::vector<Point> points;
  std::vector<int> multiplicities;
  Window window{};

  std::size_t size() const { return points.size(); }
  bool simple() const;
  /// Total point mass (sum of multiplicities).
  std::size_t total_mass() const;
};

/// Uniform Poisson process: count ~ Poisson(lambda pi R^2), uniform positions.
PointPattern sample_ppp(double lambda, const Window& window, rng::Engine& g);

/// Matern type-II hard core: parents PPP(lambda_parent) with uniform marks,
/// a point survives iff no parent within hardcore_r has a smaller mark.
/// Parents are laid on an enlarged disk so the thinning is edge-correct.
PointPattern sample_matern_ii(double lambda_parent, double hardcore_r,
                              const Window& window, rng::Engine& g);

/// Square lattice with one uniform global translation per realization and
/// iid Gaussian per-point jitter; intensity 1/spacing^2.
PointPattern sample_perturbed_lattice(double spacing, double jitter_sd,
                                      const Window& window, rng::Engine& g);

/// Same locations, every multiplicity doubled to 2. Input must be simple.
PointPattern duplicate(const PointPattern& pattern);

struct NearestResult {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Location closest to the origin, ties broken by lowest index. Throws if the
/// pattern is empty after exclusion.
NearestResult nearest(const PointPattern& pattern,
                      std::optional<std::size_t> exclude = std::nullopt);

/// CSV dump, columns x,y,multiplicity.
void write_pattern_csv(std::ostream& os, const PointPattern& pattern);

namespace detail {
/// Squared distances to the origin of a fresh PPP(lambda) draw, unsorted.
/// Equivalent in law to sample_ppp + squaring, but skips the angles.
void sample_ppp_r2(double lambda, double window_radius, rng::Engine& g,
                   std::vector<double>& out);
/// Squared origin distances for any scenario process (fills `out`).
void sample_support_r2(const NetworkScenario& scenario, double window_radius,
                       rng::Engine& g, std::vector<double>& out);
/// Matern-II dependent thinning on a marked parent set: parent i survives iff
/// no parent within hardcore_r carries a smaller mark. When origin_mark is
/// set, a virtual competitor at the origin with that mark participates too
/// (used by Palm conditioning). Returns one flag per parent.
std::vector<char> matern_retain(const std::vector<Point>& parents,
                                const std::vector<double>& marks, double hardcore_r,
                                std::optional<double> origin_mark = std::nullopt);
}  // namespace detail

}  // namespace sirnet
