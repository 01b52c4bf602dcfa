#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace accsim {

/// One independent random stream. Ensembles derive the stream of path i
/// deterministically from (master seed, i), so results do not depend on how
/// paths are distributed over workers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

  static RandomStream for_path(std::uint64_t master_seed, std::uint64_t path_index) {
    return RandomStream(mix(master_seed) ^ (0xA24BAED4963EE407ull * (path_index + 1)));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double canonical() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + canonical() * (hi - lo); }

  double exponential(double rate) { return -std::log1p(-canonical()) / rate; }

  /// Index distributed proportionally to the (non-negative) weights.
  std::size_t pick_weighted(std::span<const double> weights, double total) {
    const double u = canonical() * total;
    double acc = 0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0) last_positive = i;
      acc += weights[i];
      if (u < acc) return i;
    }
    return last_positive;  // u landed on accumulated roundoff
  }

  std::uint64_t raw() { return engine_(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace accsim
