#include <doctest.h>

#include <random>
#include <set>

#include "aiet/ergopt.hpp"
#include "aiet/maxplus.hpp"
#include "aiet/thermo.hpp"
#include "fixtures.hpp"

using namespace aiet;

namespace {

struct BruteForce {
  Rational max_mean, min_mean;
  std::set<Vertex> max_vertices, min_vertices;
  std::set<EdgeId> max_edges, min_edges;
  bool any = false;
};

// Enumerates each elementary cycle once, rooted at its smallest vertex.
BruteForce enumerate_cycles(const Digraph& g, const RationalVector& phi) {
  BruteForce out;
  std::vector<EdgeId> path;
  std::vector<bool> on_path(g.vertex_count(), false);
  auto record = [&](const std::vector<EdgeId>& cycle) {
    Rational sum = 0;
    for (EdgeId e : cycle) sum += phi[e];
    const Rational mean = sum / static_cast<int>(cycle.size());
    auto update = [&](Rational& best, std::set<Vertex>& vs, std::set<EdgeId>& es, bool better) {
      if (!out.any || better) {
        best = mean;
        vs.clear();
        es.clear();
      }
      if (best == mean)
        for (EdgeId e : cycle) {
          es.insert(e);
          vs.insert(g.edge(e).source);
        }
    };
    const bool first = !out.any;
    update(out.max_mean, out.max_vertices, out.max_edges, !first && mean > out.max_mean);
    out.any = true;
    if (first) {
      out.min_mean = mean;
      out.min_vertices = out.max_vertices;
      out.min_edges = out.max_edges;
    } else {
      update(out.min_mean, out.min_vertices, out.min_edges, mean < out.min_mean);
    }
  };
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex root, Vertex v) {
    for (EdgeId e : g.out_edges(v)) {
      const Vertex w = g.edge(e).target;
      if (w < root) continue;
      path.push_back(e);
      if (w == root) {
        record(path);
      } else if (!on_path[w]) {
        on_path[w] = true;
        dfs(root, w);
        on_path[w] = false;
      }
      path.pop_back();
    }
  };
  for (Vertex r = 0; r < g.vertex_count(); ++r) {
    on_path[r] = true;
    dfs(r, r);
    on_path[r] = false;
  }
  return out;
}

Digraph random_strong_graph(std::mt19937& rng, int n, double density) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<Edge> edges;
  for (int k = 0; k < n; ++k) edges.insert({order[k], order[(k + 1) % n]});
  std::bernoulli_distribution coin(density);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (coin(rng)) edges.insert({u, v});
  return Digraph(n, {edges.begin(), edges.end()});
}

bool is_elementary_cycle(const Digraph& g, const std::vector<Vertex>& cycle) {
  std::set<Vertex> seen(cycle.begin(), cycle.end());
  if (seen.size() != cycle.size() || cycle.empty()) return false;
  for (std::size_t k = 0; k < cycle.size(); ++k)
    if (g.find_edge(cycle[k], cycle[(k + 1) % cycle.size()]) < 0) return false;
  return true;
}

Rational cycle_mean(const Digraph& g, const RationalVector& phi, const std::vector<Vertex>& cycle) {
  Rational sum = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k) sum += phi[g.find_edge(cycle[k], cycle[(k + 1) % cycle.size()])];
  return sum / static_cast<int>(cycle.size());
}

}  // namespace

TEST_CASE("critical subgraphs match brute-force enumeration on 100 random graphs") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    CAPTURE(trial);
    const Digraph g = random_strong_graph(rng, size(rng), 0.3);
    RationalVector phi;
    for (int e = 0; e < g.edge_count(); ++e) phi.emplace_back(num(rng), den(rng));
    const BruteForce truth = enumerate_cycles(g, phi);

    const auto mx = max_cycle_mean(g, phi);
    const auto mn = min_cycle_mean(g, phi);
    CHECK(mx.value == truth.max_mean);
    CHECK(mn.value == truth.min_mean);
    CHECK(is_elementary_cycle(g, mx.witness));
    CHECK(is_elementary_cycle(g, mn.witness));
    CHECK(cycle_mean(g, phi, mx.witness) == mx.value);
    CHECK(cycle_mean(g, phi, mn.witness) == mn.value);

    const auto cmax = critical_subgraph(g, phi, Optimum::max);
    const auto cmin = critical_subgraph(g, phi, Optimum::min);
    CHECK(cmax.verified);
    CHECK(std::set<Vertex>(cmax.vertices.begin(), cmax.vertices.end()) == truth.max_vertices);
    CHECK(std::set<EdgeId>(cmax.edges.begin(), cmax.edges.end()) == truth.max_edges);
    CHECK(std::set<Vertex>(cmin.vertices.begin(), cmin.vertices.end()) == truth.min_vertices);
    CHECK(std::set<EdgeId>(cmin.edges.begin(), cmin.edges.end()) == truth.min_edges);
    CHECK(elementary_cycles_oracle(g, phi, truth.max_mean) == cmax);
  }
}

TEST_CASE("Karp cycle mean in floating point") {
  // Edge ids follow the sorted order: (0,1) (1,0) (1,2) (2,0) (2,2).
  const Digraph g(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 2}});
  const std::vector<double> w = {1.0, 2.0, 0.0, -1.0, 1.25};
  const auto mean = karp_max_cycle_mean<double>(g, w);
  CHECK(mean.weight / mean.length == doctest::Approx(1.5));
  const std::vector<std::int64_t> wi = {1, 2, 0, -1, 5};
  const auto exact = karp_max_cycle_mean<std::int64_t>(g, wi);
  CHECK(exact.weight == 5 * exact.length);
}

TEST_CASE("oracle refuses oversized inputs") {
  const auto& model = fixtures::bf5();
  OracleLimits tiny;
  tiny.max_vertices = 10;
  CHECK_THROWS_AS(elementary_cycles_oracle(model.towers.graph(), model.towers.phi(), Rational(0), tiny),
                  OracleRefused);
  const auto unverified =
      critical_subgraph(model.towers.graph(), model.towers.phi(), Optimum::max, true, tiny);
  CHECK_FALSE(unverified.verified);
  CHECK(unverified == model.maximizing);
}

TEST_CASE("optimal means and subshifts of the example") {
  const auto& model = fixtures::bf5();
  const TowerGraph& g = model.towers;
  CHECK(model.phi_max.value == 0);
  CHECK(model.phi_min.value == -1);
  CHECK(model.maximizing.verified);
  CHECK(model.minimizing.verified);

  auto labels = [&](const CriticalSubgraph& sub) {
    std::vector<std::string> out;
    for (Vertex v : sub.vertices) out.push_back(g.label(v));
    return out;
  };
  auto adjacency = [&](const CriticalSubgraph& sub) {
    std::vector<std::vector<int>> a(sub.vertices.size(), std::vector<int>(sub.vertices.size(), 0));
    for (std::size_t i = 0; i < sub.vertices.size(); ++i)
      for (std::size_t j = 0; j < sub.vertices.size(); ++j) {
        const EdgeId e = g.graph().find_edge(sub.vertices[i], sub.vertices[j]);
        a[i][j] = e >= 0 && std::binary_search(sub.edges.begin(), sub.edges.end(), e);
      }
    return a;
  };
  CHECK(labels(model.maximizing) == fixtures::bf5_sigma_max());
  CHECK(labels(model.minimizing) == fixtures::bf5_sigma_min());
  CHECK(adjacency(model.maximizing) == fixtures::bf5_adjacency_max());
  CHECK(adjacency(model.minimizing) == fixtures::bf5_adjacency_min());

  CHECK(model.h_top_max == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(model.h_top_min == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(model.h_top == doctest::Approx(std::log(fixtures::bf5_theta0())).epsilon(1e-12));

  const Digraph sub = critical_digraph(g.graph(), model.maximizing);
  CHECK(sub.vertex_count() == 15);
  CHECK(sub.edge_count() == 45);
}
