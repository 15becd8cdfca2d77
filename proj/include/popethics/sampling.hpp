#pragma once

// Seeded random profile generation. std::mt19937_64 is fully specified by the
// standard; the distributions below are hand-rolled so that a seed produces
// the same stream with every standard library.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "profile.hpp"

namespace popethics {

struct SamplerConfig {
  std::uint64_t seed = 7;
  double range = 100.0;        // levels uniform on [-range, range]
  std::size_t max_pop = 8;     // population sizes uniform on 1..max_pop
  std::size_t samples = 100000;

  void validate() const {
    if (!(range > 0.0) || !std::isfinite(range)) throw std::invalid_argument("sampler range must be positive");
    if (max_pop < 1) throw std::invalid_argument("sampler max_pop must be at least 1");
    if (samples < 1) throw std::invalid_argument("sampler samples must be at least 1");
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed for a named sub-task of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(master ^ splitmix64(h));
}

class Sampler {
 public:
  explicit Sampler(const SamplerConfig& cfg) : cfg_(cfg), engine_(cfg.seed) { cfg_.validate(); }

  const SamplerConfig& config() const noexcept { return cfg_; }

  /// Uniform on [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform on (0, 1].
  double unit_open_left() { return 1.0 - unit(); }

  /// Uniform integer on [lo, hi], rejection sampled.
  std::size_t index(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::size_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r = 0;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::size_t>(r % span);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  std::size_t population() { return index(1, cfg_.max_pop); }

  double level() { return uniform(-cfg_.range, cfg_.range); }
  double positive_level() { return cfg_.range * unit_open_left(); }
  double negative_level() { return -positive_level(); }

  Profile profile() { return profile_of(population(), [this] { return level(); }); }
  Profile profile(std::size_t n) { return profile_of(n, [this] { return level(); }); }
  Profile positive_profile() { return profile_of(population(), [this] { return positive_level(); }); }
  Profile positive_profile(std::size_t n) { return profile_of(n, [this] { return positive_level(); }); }
  Profile negative_profile() { return profile_of(population(), [this] { return negative_level(); }); }

  /// Fisher-Yates shuffle.
  Profile permuted(const Profile& p) {
    std::vector<double> out(p.begin(), p.end());
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[index(0, i - 1)]);
    return Profile(std::move(out));
  }

 private:
  template <typename Draw>
  Profile profile_of(std::size_t n, Draw draw) {
    std::vector<double> out(n);
    for (double& x : out) x = draw();
    return Profile(std::move(out));
  }

  SamplerConfig cfg_;
  std::mt19937_64 engine_;
};

}  // namespace popethics
