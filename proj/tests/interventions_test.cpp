#include <doctest.h>

#include <algorithm>

#include "epinet/errors.hpp"
#include "epinet/generators.hpp"
#include "epinet/interventions.hpp"
#include "epinet/metrics.hpp"

using namespace epinet;

namespace {

bool is_subgraph(const Graph& sub, const Graph& g) {
  if (sub.node_count() != g.node_count()) return false;
  for (const auto& e : sub.edges())
    if (!g.has_edge(e.first, e.second)) return false;
  return true;
}

}  // namespace

TEST_CASE("degree cap on a star") {
  const Graph out = apply_degree_cap(star_graph(10), 5, 1);
  CHECK(out.degree(0) == 5);
  std::size_t isolated = 0;
  for (NodeId u = 1; u <= 10; ++u) isolated += out.degree(u) == 0;
  CHECK(isolated == 5);
}

TEST_CASE("degree cap leaves low-degree graphs alone") {
  const Graph ring = generate_ws(50, 4, 0.0, 1);
  CHECK(apply_degree_cap(ring, 5, 3) == ring);
  CHECK(apply_degree_cap(ring, 4, 3) == ring);
  CHECK(apply_degree_cap(ring, 0, 3).edge_count() == 0);
}

TEST_CASE("degree cap properties over random graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = seed % 2 ? generate_er(120, 0.08, seed) : generate_ba(120, 4, seed);
    const std::size_t cap = 1 + seed % 7;
    const Graph once = apply_degree_cap(g, cap, seed);
    CHECK(once.max_degree() <= cap);
    CHECK(is_subgraph(once, g));
    CHECK_FALSE(find_invariant_violation(once));
    CHECK(apply_degree_cap(once, cap, seed + 1) == once);
    CHECK(apply_degree_cap(g, cap, seed) == once);
  }
}

TEST_CASE("lockdown on a dense BA graph removes the scale-free tail") {
  const Graph g = generate_ba(3000, 20, 1);
  CHECK(density(g) == doctest::Approx(0.0133).epsilon(0.01));
  const Graph capped = apply_degree_cap(g, 5, 2);
  CHECK(density(capped) < 0.0033);
  CHECK_FALSE(analyze(capped).scale_free);
}

TEST_CASE("thinning to a density") {
  const Graph k10 = complete_graph(10);
  CHECK(thin_to_density(k10, 0.5, 1).edge_count() == 22);
  CHECK(thin_to_density(k10, 1.0, 1) == k10);
  CHECK(thin_to_density(k10, 0.0, 1).edge_count() == 0);

  const Graph g = generate_er(200, 0.05, 4);
  const Graph same = thin_to_density(g, density(g), 9);
  CHECK(same == g);
  const Graph thin = thin_to_density(g, 0.01, 9);
  CHECK(density(thin) <= 0.01);
  CHECK(is_subgraph(thin, g));
  CHECK(thin == thin_to_density(g, 0.01, 9));
  CHECK_THROWS_AS(thin_to_density(g, 0.5, 9), ParameterError);
}

TEST_CASE("intervention spec validation and dispatch") {
  CHECK_THROWS_AS((InterventionSpec{-1.0, DegreeCap{5}}.validate()), ParameterError);
  CHECK_THROWS_AS((InterventionSpec{1.0, ThinToDensity{1.5}}.validate()), ParameterError);
  CHECK_NOTHROW((InterventionSpec{0.0, DegreeCap{0}}.validate()));

  const Graph g = generate_ba(100, 3, 5);
  CHECK(apply_intervention(g, {1.0, DegreeCap{3}}, 7) == apply_degree_cap(g, 3, 7));
  CHECK(apply_intervention(g, {1.0, ThinToDensity{0.01}}, 7) == thin_to_density(g, 0.01, 7));
}
