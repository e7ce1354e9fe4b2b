#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace trajsample {

// splitmix64. Used instead of <random> engines/distributions so that seeded
// runs produce identical streams on every platform and standard library.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Combines a master seed with a stream index into an independent seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t t = splitmix64(s) ^ stream;
  return splitmix64(t);
}

/// FNV-1a hash of a string, for deriving per-scenario seeds from ids.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Small deterministic PRNG built on splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform draw in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller (cached spare for the second draw).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// One categorical draw proportional to `weights` (total must be > 0).
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  /// k distinct indices from [0, n), uniformly (partial Fisher-Yates).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k && i < n; ++i) {
      std::size_t j = i + uniform_index(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k < n ? k : n);
    return pool;
  }

  /// k distinct indices drawn successively with probability proportional to
  /// weight, renormalizing after each draw. Once the remaining mass is zero
  /// the rest are drawn uniformly from the remaining indices.
  std::vector<std::size_t> sample_weighted_indices(
      std::span<const double> weights, std::size_t k) {
    std::vector<double> w(weights.begin(), weights.end());
    std::vector<std::size_t> alive(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) alive[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    while (out.size() < k && !alive.empty()) {
      double total = 0.0;
      for (std::size_t i : alive) total += w[i];
      std::size_t pick;
      if (total <= 0.0) {
        pick = uniform_index(alive.size());
      } else {
        double u = uniform01() * total;
        double acc = 0.0;
        pick = alive.size() - 1;
        for (std::size_t j = 0; j < alive.size(); ++j) {
          acc += w[alive[j]];
          if (u < acc) {
            pick = j;
            break;
          }
        }
      }
      out.push_back(alive[pick]);
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace trajsample
