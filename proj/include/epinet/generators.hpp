#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "epinet/graph.hpp"

namespace epinet {

struct ErdosRenyiParams {
  std::size_t n = 0;
  double p = 0.0;
};

struct WattsStrogatzParams {
  std::size_t n = 0;
  std::size_t k = 0;  // ring degree, even
  double p_rewire = 0.0;
};

struct BarabasiAlbertParams {
  std::size_t n = 0;
  std::size_t m = 1;  // edges per arriving node
};

struct GeneratorParams {
  std::variant<ErdosRenyiParams, WattsStrogatzParams, BarabasiAlbertParams> variant;
  std::uint64_t seed = 0;
};

// G(n, p): every unordered pair independently present with probability p.
// Pairs are visited by geometric skipping, so cost is O(n + |E|).
Graph generate_er(std::size_t n, double p, std::uint64_t seed);

// Ring lattice with k nearest neighbours, each lattice edge rewired at one
// end with probability p_rewire to a uniform non-duplicate, non-self target.
Graph generate_ws(std::size_t n, std::size_t k, double p_rewire, std::uint64_t seed);

// Preferential attachment from m isolated seed nodes. The first arriving node
// links to all seeds; later nodes pick m distinct targets with probability
// proportional to degree. Edge count is exactly m * (n - m).
Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

Graph generate(const GeneratorParams& params);

// Short label such as "ER(n=1000,p=0.01)".
std::string describe(const GeneratorParams& params);

}  // namespace epinet
