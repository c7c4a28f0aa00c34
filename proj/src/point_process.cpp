#include "sirnet/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace sirnet {

namespace {

constexpr double kPi = std::numbers::pi;

long poisson_count(double mean, rng::Engine& g) {
  std::poisson_distribution<long> dist(mean);
  return dist(g);
}

}  // namespace

bool PointPattern::simple() const {
  return std::all_of(multiplicities.begin(), multiplicities.end(),
                     [](int m) { return m == 1; });
}

std::size_t PointPattern::total_mass() const {
  std::size_t mass = 0;
  for (int m : multiplicities) mass += static_cast<std::size_t>(m);
  return mass;
}

PointPattern sample_ppp(double lambda, const Window& window, rng::Engine& g) {
  if (!(lambda > 0.0)) throw std::invalid_argument("sample_ppp: lambda must be positive");
  if (!(window.radius > 0.0)) throw std::invalid_argument("sample_ppp: window radius must be positive");
  const double R = window.radius;
  const long n = poisson_count(lambda * kPi * R * R, g);
  PointPattern p;
  p.window = window;
  p.points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = R * std::sqrt(rng::uniform01(g));
    const double phi = 2.0 * kPi * rng::uniform01_left(g);
    p.points.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  p.multiplicities.assign(p.points.size(), 1);
  return p;
}

PointPattern sample_matern_ii(double lambda_parent, double hardcore_r,
                              const Window& window, rng::Engine& g) {
  if (!(lambda_parent > 0.0))
    throw std::invalid_argument("sample_matern_ii: parent intensity must be positive");
  if (hardcore_r < 0.0)
    throw std::invalid_argument("sample_matern_ii: hardcore radius must be >= 0");
  const double R = window.radius;
  // Parents on an enlarged disk so points near the window edge compete with
  // parents outside it.
  const double Rp = R + hardcore_r;
  const long n = poisson_count(lambda_parent * kPi * Rp * Rp, g);
  std::vector<Point> parents(static_cast<std::size_t>(n));
  std::vector<double> marks(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = Rp * std::sqrt(rng::uniform01(g));
    const double phi = 2.0 * kPi * rng::uniform01_left(g);
    parents[static_cast<std::size_t>(i)] = {r * std::cos(phi), r * std::sin(phi)};
    marks[static_cast<std::size_t>(i)] = rng::uniform01(g);
  }

  PointPattern p;
  p.window = window;
  if (hardcore_r == 0.0) {
    for (long i = 0; i < n; ++i) {
      const Point& q = parents[static_cast<std::size_t>(i)];
      if (q.x * q.x + q.y * q.y <= R * R) p.points.push_back(q);
    }
    p.multiplicities.assign(p.points.size(), 1);
    return p;
  }

  // Grid buckets of side hardcore_r; competitors live in the 3x3 neighborhood.
  const double cell = hardcore_r;
  auto key = [cell](const Point& q) {
    const auto ix = static_cast<long>(std::floor(q.x / cell));
    const auto iy = static_cast<long>(std::floor(q.y / cell));
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  buckets.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < parents.size(); ++i) buckets[key(parents[i])].push_back(i);

  const double r2hc = hardcore_r * hardcore_r;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    const Point& q = parents[i];
    if (q.x * q.x + q.y * q.y > R * R) continue;
    bool retained = true;
    const auto ix = static_cast<long>(std::floor(q.x / cell));
    const auto iy = static_cast<long>(std::floor(q.y / cell));
    for (long dx = -1; dx <= 1 && retained; ++dx) {
      for (long dy = -1; dy <= 1 && retained; ++dy) {
        const std::uint64_t k =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix + dx)) << 32) |
            static_cast<std::uint32_t>(iy + dy);
        auto it = buckets.find(k);
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j == i) continue;
          const double ddx = parents[j].x - q.x;
          const double ddy = parents[j].y - q.y;
          if (ddx * ddx + ddy * ddy < r2hc && marks[j] < marks[i]) {
            retained = false;
            break;
          }
        }
      }
    }
    if (retained) p.points.push_back(q);
  }
  p.multiplicities.assign(p.points.size(), 1);
  return p;
}

PointPattern sample_perturbed_lattice(double spacing, double jitter_sd,
                                      const Window& window, rng::Engine& g) {
  if (!(spacing > 0.0))
    throw std::invalid_argument("sample_perturbed_lattice: spacing must be positive");
  if (jitter_sd < 0.0)
    throw std::invalid_argument("sample_perturbed_lattice: jitter sd must be >= 0");
  const double R = window.radius;
  const double ux = spacing * rng::uniform01_left(g);
  const double uy = spacing * rng::uniform01_left(g);
  // Sites whose jittered position can land inside the window (6 sigma margin).
  const double margin = 6.0 * jitter_sd + spacing;
  const long K = static_cast<long>(std::ceil((R + margin) / spacing));
  std::normal_distribution<double> jitter(0.0, jitter_sd);

  PointPattern p;
  p.window = window;
  for (long i = -K; i <= K; ++i) {
    for (long j = -K; j <= K; ++j) {
      double x = static_cast<double>(i) * spacing + ux;
      double y = static_cast<double>(j) * spacing + uy;
      if (jitter_sd > 0.0) {
        x += jitter(g);
        y += jitter(g);
      }
      if (x * x + y * y <= R * R) p.points.push_back({x, y});
    }
  }
  p.multiplicities.assign(p.points.size(), 1);
  return p;
}

PointPattern duplicate(const PointPattern& pattern) {
  if (!pattern.simple())
    throw std::invalid_argument("duplicate: input pattern is already non-simple");
  PointPattern out = pattern;
  out.multiplicities.assign(out.points.size(), 2);
  return out;
}

NearestResult nearest(const PointPattern& pattern,
                      std::optional<std::size_t> exclude) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_r2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    if (exclude && *exclude == i) continue;
    const double r2 =
        pattern.points[i].x * pattern.points[i].x + pattern.points[i].y * pattern.points[i].y;
    if (r2 < best_r2) {
      best_r2 = r2;
      best = i;
    }
  }
  if (best == std::numeric_limits<std::size_t>::max())
    throw std::runtime_error("nearest: no interferer in window");
  return {best, std::sqrt(best_r2)};
}

void write_pattern_csv(std::ostream& os, const PointPattern& pattern) {
  os << "x,y,multiplicity\n";
  char buf[80];
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9e,%.9e,%d\n", pattern.points[i].x,
                  pattern.points[i].y, pattern.multiplicities[i]);
    os << buf;
  }
}

namespace detail {

void sample_ppp_r2(double lambda, double window_radius, rng::Engine& g,
                   std::vector<double>& out) {
  out.clear();
  const double R2 = window_radius * window_radius;
  const long n = poisson_count(lambda * kPi * R2, g);
  out.reserve(static_cast<std::size_t>(n));
  // r^2/R^2 is uniform for a uniform point on the disk.
  for (long i = 0; i < n; ++i) out.push_back(R2 * rng::uniform01(g));
}

void sample_support_r2(const NetworkScenario& scenario, double window_radius,
                       rng::Engine& g, std::vector<double>& out) {
  const Window w{window_radius};
  switch (scenario.process) {
    case ProcessKind::PPP:
      sample_ppp_r2(scenario.support_intensity(), window_radius, g, out);
      return;
    case ProcessKind::MaternII: {
      const auto pat = sample_matern_ii(scenario.process_params.matern_parent_intensity,
                                        scenario.process_params.matern_hardcore_radius, w, g);
      out.clear();
      out.reserve(pat.size());
      for (const auto& q : pat.points) out.push_back(q.x * q.x + q.y * q.y);
      return;
    }
    case ProcessKind::PerturbedLattice: {
      const auto pat = sample_perturbed_lattice(scenario.process_params.lattice_spacing,
                                                scenario.process_params.lattice_jitter_sd, w, g);
      out.clear();
      out.reserve(pat.size());
      for (const auto& q : pat.points) out.push_back(q.x * q.x + q.y * q.y);
      return;
    }
  }
  throw std::logic_error("sample_support_r2: unknown process");
}

}  // namespace detail

}  // namespace sirnet
