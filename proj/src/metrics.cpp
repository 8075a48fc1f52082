#include "epinet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "epinet/errors.hpp"

namespace epinet {
namespace {

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) out[u] = g.degree(u);
  return out;
}

// tail is sorted ascending and every value is >= k_min.
PowerLawFit fit_sorted_tail(std::span<const std::size_t> tail, std::size_t k_min) {
  const double shift = static_cast<double>(k_min) - 0.5;
  double log_sum = 0.0;
  for (auto k : tail) log_sum += std::log(static_cast<double>(k) / shift);
  const auto n = static_cast<double>(tail.size());
  PowerLawFit fit;
  fit.k_min = k_min;
  fit.tail_size = tail.size();
  fit.exponent = log_sum > 0.0 ? 1.0 + n / log_sum : std::numeric_limits<double>::infinity();

  // Discrete KS distance: compare at every observed value and just below it.
  auto model_cdf = [&](double k) {
    if (k < static_cast<double>(k_min)) return 0.0;
    return 1.0 - std::pow((k + 0.5) / shift, 1.0 - fit.exponent);
  };
  double worst = 0.0;
  std::size_t i = 0;
  while (i < tail.size()) {
    const auto k = tail[i];
    std::size_t j = i;
    while (j < tail.size() && tail[j] == k) ++j;
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(at - model_cdf(static_cast<double>(k))));
    worst = std::max(worst, std::abs(below - model_cdf(static_cast<double>(k) - 1.0)));
    i = j;
  }
  fit.ks_distance = worst;
  return fit;
}

}  // namespace

double density(const Graph& g) {
  const auto n = g.node_count();
  if (n < 2) throw MetricError("density is undefined for fewer than two nodes");
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

DegreeStats degree_stats(const Graph& g) {
  if (g.node_count() == 0) throw MetricError("degree statistics are undefined for an empty graph");
  DegreeStats stats;
  for (NodeId u = 0; u < g.node_count(); ++u) ++stats.histogram[g.degree(u)];
  stats.average_degree =
      2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  return stats;
}

PowerLawFit fit_power_law(std::span<const std::size_t> degrees, std::optional<std::size_t> k_min) {
  std::vector<std::size_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  auto tail_from = [&](std::size_t k) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
    return std::span<const std::size_t>(sorted).subspan(
        static_cast<std::size_t>(it - sorted.begin()));
  };

  if (k_min) {
    if (*k_min < 1) throw FitError(0, "k_min must be at least 1");
    const auto tail = tail_from(*k_min);
    if (tail.size() < kMinTailSize) throw FitError(tail.size(), "too few degrees >= k_min");
    return fit_sorted_tail(tail, *k_min);
  }

  std::optional<PowerLawFit> best;
  std::size_t previous = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto k = sorted[i];
    if (k < 1 || (i > 0 && k == previous)) {
      previous = k;
      continue;
    }
    previous = k;
    const auto tail = tail_from(k);
    if (tail.size() < kMinTailSize) break;
    auto fit = fit_sorted_tail(tail, k);
    if (!best || fit.ks_distance < best->ks_distance) best = fit;
  }
  if (!best) {
    const auto positive = tail_from(1).size();
    throw FitError(positive, "too few positive degrees for a power-law fit");
  }
  return *best;
}

PowerLawFit fit_power_law(const Graph& g, std::optional<std::size_t> k_min) {
  const auto degrees = degree_sequence(g);
  return fit_power_law(degrees, k_min);
}

DegreeStats analyze(const Graph& g) {
  auto stats = degree_stats(g);
  if (g.node_count() >= 2) stats.density = density(g);
  try {
    const auto fit = fit_power_law(g);
    stats.power_law_exponent = fit.exponent;
    stats.scale_free = classify_scale_free(fit.exponent);
  } catch (const FitError&) {
  }
  return stats;
}

}  // namespace epinet
