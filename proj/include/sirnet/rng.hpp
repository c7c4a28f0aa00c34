#pragma once

#include <cstdint>
#include <random>

namespace sirnet::rng {

using Engine = std::mt19937_64;

/// Engine for a (seed, stream) pair. Distinct streams are independent for
/// practical purposes; identical pairs replay identically.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

/// Uniform draw on (0, 1]; never returns 0, so -log(u) is always finite.
inline double uniform01(Engine& g) {
  return static_cast<double>((g() >> 11) + 1) * 0x1.0p-53;
}

/// Uniform draw on [0, 1).
inline double uniform01_left(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace sirnet::rng
