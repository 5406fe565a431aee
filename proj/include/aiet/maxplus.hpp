#pragma once

#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "aiet/digraph.hpp"
#include "aiet/errors.hpp"

namespace aiet {

/// A cycle mean as an unreduced fraction weight/length.
template <typename Weight>
struct MeanFraction {
  Weight weight{};
  long length = 1;
};

namespace detail {

/// a/b < c/d for positive b, d.
template <typename Weight>
bool fraction_less(Weight a, long b, Weight c, long d) {
  if constexpr (std::is_integral_v<Weight>) {
    return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
  } else {
    return a / static_cast<Weight>(b) < c / static_cast<Weight>(d);
  }
}

}  // namespace detail

/// Karp's maximum cycle mean of a strongly connected graph.
template <typename Weight>
MeanFraction<Weight> karp_max_cycle_mean(const Digraph& g, std::span<const Weight> weights) {
  if (!g.is_strongly_connected()) throw InputError("cycle mean of a graph that is not strongly connected");
  const int n = g.vertex_count();
  // best[k][v]: maximum weight of a k-edge walk from vertex 0 to v.
  std::vector<std::vector<Weight>> best(n + 1, std::vector<Weight>(n, Weight{}));
  std::vector<std::vector<char>> reached(n + 1, std::vector<char>(n, 0));
  reached[0][0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edge(e);
      if (!reached[k - 1][u]) continue;
      const Weight w = best[k - 1][u] + weights[e];
      if (!reached[k][v] || best[k][v] < w) {
        best[k][v] = w;
        reached[k][v] = 1;
      }
    }
  }
  bool found = false;
  MeanFraction<Weight> result;
  for (Vertex v = 0; v < n; ++v) {
    if (!reached[n][v]) continue;
    bool have = false;
    MeanFraction<Weight> worst;
    for (int k = 0; k < n; ++k) {
      if (!reached[k][v]) continue;
      MeanFraction<Weight> candidate{best[n][v] - best[k][v], n - k};
      if (!have || detail::fraction_less(candidate.weight, candidate.length, worst.weight, worst.length)) {
        worst = candidate;
        have = true;
      }
    }
    if (have && (!found || detail::fraction_less(result.weight, result.length, worst.weight, worst.length))) {
      result = worst;
      found = true;
    }
  }
  if (!found) throw InvariantError("Karp recurrence found no cycle");
  return result;
}

/// Vertex potential x with x_v >= x_u + w(u, v) on every edge, for weights
/// whose cycles are all nonpositive (longest paths from a virtual source).
/// Relaxations smaller than `slack` are ignored. Throws InvariantError if a
/// positive cycle prevents convergence.
template <typename Weight>
std::vector<Weight> maxplus_potential(const Digraph& g, std::span<const Weight> reduced, Weight slack = Weight{}) {
  const int n = g.vertex_count();
  std::vector<Weight> x(n, Weight{});
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edge(e);
      const Weight candidate = x[u] + reduced[e];
      if (candidate > x[v] + slack) {
        x[v] = candidate;
        changed = true;
      }
    }
    if (!changed) return x;
  }
  throw InvariantError("positive cycle in reduced weights");
}

}  // namespace aiet
