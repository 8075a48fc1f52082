#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>

#include "epinet/graph.hpp"

namespace epinet {

struct DegreeStats {
  double average_degree = 0.0;                  // <k> = 2|E| / n
  std::map<std::size_t, std::size_t> histogram;  // degree -> node count
  std::optional<double> density;                 // defined for n >= 2
  std::optional<double> power_law_exponent;
  bool scale_free = false;
};

struct PowerLawFit {
  double exponent = 0.0;
  std::size_t k_min = 0;
  std::size_t tail_size = 0;
  double ks_distance = 0.0;
};

// Smallest tail accepted by fit_power_law.
inline constexpr std::size_t kMinTailSize = 10;

// 2|E| / (n (n - 1)). Throws MetricError for n < 2.
double density(const Graph& g);

// Average degree and histogram. Throws MetricError for an empty graph.
DegreeStats degree_stats(const Graph& g);

// Maximum-likelihood power-law exponent over degrees >= k_min, using the
// continuous approximation with the half-integer shift:
//   exponent = 1 + n_tail / sum ln(k_i / (k_min - 0.5)).
// Without k_min, every candidate with at least kMinTailSize tail points is
// tried and the one minimising the Kolmogorov-Smirnov distance between the
// empirical and fitted tail CDFs wins (ties go to the smaller k_min).
// Throws FitError when the tail is too small.
PowerLawFit fit_power_law(std::span<const std::size_t> degrees,
                          std::optional<std::size_t> k_min = std::nullopt);
PowerLawFit fit_power_law(const Graph& g, std::optional<std::size_t> k_min = std::nullopt);

// Strictly between 2 and 3.
constexpr bool classify_scale_free(double exponent) { return exponent > 2.0 && exponent < 3.0; }

// degree_stats plus density and an auto-k_min power-law fit. A failed fit
// leaves power_law_exponent empty and scale_free false.
DegreeStats analyze(const Graph& g);

}  // namespace epinet
