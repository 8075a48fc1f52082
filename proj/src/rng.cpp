#include "epinet/rng.hpp"

#include <cmath>
#include <limits>

namespace epinet {

std::uint64_t Rng::index(std::uint64_t bound) {
  // Lemire's nearly-divisionless bounded integer, with rejection for exactness.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::exponential(double rate) { return -std::log(uniform_open()) / rate; }

std::uint64_t Rng::geometric(double p) {
  if (p >= 1.0) return 0;
  const double draws = std::floor(std::log(uniform_open()) / std::log1p(-p));
  if (draws >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(draws);
}

}  // namespace epinet
