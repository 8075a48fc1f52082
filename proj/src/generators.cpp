#include "epinet/generators.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "epinet/errors.hpp"
#include "epinet/rng.hpp"

namespace epinet {

Graph generate_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("ER edge probability must lie in [0, 1]");
  Graph g(n);
  if (n < 2 || p == 0.0) return g;
  Rng rng(seed);
  // Walk the lower triangle (v, w), w < v, in row-major order.
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < n) {
    const std::uint64_t skip = rng.geometric(p);
    w += first ? skip : skip + 1;
    first = false;
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) g.add_edge(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return g;
}

Graph generate_ws(std::size_t n, std::size_t k, double p_rewire, std::uint64_t seed) {
  if (k % 2 != 0) throw ParameterError("WS ring degree k must be even");
  if (k >= n) throw ParameterError("WS ring degree k must be smaller than n");
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw ParameterError("WS rewiring probability must lie in [0, 1]");
  }
  Graph g(n);
  const std::size_t half = k / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>((u + j) % n));
    }
  }
  if (p_rewire == 0.0) return g;

  Rng rng(seed);
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!rng.bernoulli(p_rewire)) continue;
      const auto from = static_cast<NodeId>(u);
      const auto old_target = static_cast<NodeId>((u + j) % n);
      if (!g.has_edge(from, old_target)) continue;
      if (g.degree(from) >= n - 1) continue;  // no free target exists
      NodeId target = 0;
      do {
        target = static_cast<NodeId>(rng.index(n));
      } while (target == from || g.has_edge(from, target));
      g.remove_edge(from, old_target);
      g.add_edge(from, target);
    }
  }
  return g;
}

Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw ParameterError("BA requires 1 <= m < n");
  Graph g(n);
  Rng rng(seed);
  // Each node appears once per incident edge, so a uniform pick is degree-proportional.
  std::vector<NodeId> endpoint_pool;
  endpoint_pool.reserve(2 * m * (n - m));
  std::vector<NodeId> targets(m);
  for (std::size_t i = 0; i < m; ++i) targets[i] = static_cast<NodeId>(i);

  for (std::size_t source = m; source < n; ++source) {
    const auto s = static_cast<NodeId>(source);
    for (NodeId t : targets) {
      g.add_edge(s, t);
      endpoint_pool.push_back(s);
      endpoint_pool.push_back(t);
    }
    if (source + 1 == n) break;
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick = endpoint_pool[rng.index(endpoint_pool.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
  }
  return g;
}

Graph generate(const GeneratorParams& params) {
  struct Visitor {
    std::uint64_t seed;
    Graph operator()(const ErdosRenyiParams& p) const { return generate_er(p.n, p.p, seed); }
    Graph operator()(const WattsStrogatzParams& p) const {
      return generate_ws(p.n, p.k, p.p_rewire, seed);
    }
    Graph operator()(const BarabasiAlbertParams& p) const { return generate_ba(p.n, p.m, seed); }
  };
  return std::visit(Visitor{params.seed}, params.variant);
}

std::string describe(const GeneratorParams& params) {
  std::ostringstream os;
  struct Visitor {
    std::ostringstream& os;
    void operator()(const ErdosRenyiParams& p) const { os << "ER(n=" << p.n << ",p=" << p.p << ")"; }
    void operator()(const WattsStrogatzParams& p) const {
      os << "WS(n=" << p.n << ",k=" << p.k << ",p=" << p.p_rewire << ")";
    }
    void operator()(const BarabasiAlbertParams& p) const {
      os << "BA(n=" << p.n << ",m=" << p.m << ")";
    }
  };
  std::visit(Visitor{os}, params.variant);
  return os.str();
}

}  // namespace epinet
