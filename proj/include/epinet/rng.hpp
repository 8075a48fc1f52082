#pragma once

#include <cstdint>
#include <random>

namespace epinet {

// Seedable 64-bit generator used by every stochastic routine.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so all derived variates are computed here from
// raw 64-bit draws. Results are therefore identical across standard
// libraries for a given seed.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in the open interval (0, 1); -log of it is strictly positive.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t index(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  // Exponential variate with the given rate (> 0).
  double exponential(double rate);

  // Geometric number of failures before the first success, success probability p in (0, 1].
  std::uint64_t geometric(double p);

  // Fisher-Yates shuffle.
  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = index(i);
      std::iter_swap(first + (i - 1), first + j);
    }
  }

  // UniformRandomBitGenerator interface, for std::sample and friends.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent sub-seeds from one seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace epinet
