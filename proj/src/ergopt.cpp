#include "aiet/ergopt.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "aiet/errors.hpp"
#include "aiet/maxplus.hpp"
#include "aiet/perron.hpp"

namespace aiet {

namespace {

constexpr std::int64_t kWeightLimit = std::int64_t{1} << 40;

std::int64_t to_int64(const BigInt& value, const char* what) {
  if (value >= kWeightLimit || value <= -kWeightLimit)
    throw InputError(std::string(what) + " too large for exact cycle-mean arithmetic");
  return value.convert_to<std::int64_t>();
}

/// Integer weights phi * scale.
struct ScaledWeights {
  std::vector<std::int64_t> weights;
  BigInt scale;
};

ScaledWeights scale_to_integers(const Digraph& graph, const RationalVector& phi) {
  if (static_cast<int>(phi.size()) != graph.edge_count())
    throw InputError("edge potential size does not match the graph");
  ScaledWeights out;
  out.scale = common_denominator(phi);
  out.weights.reserve(phi.size());
  for (const Rational& p : phi) out.weights.push_back(to_int64(boost::multiprecision::numerator(Rational(p * out.scale)), "edge weight"));
  return out;
}

RationalVector negated(const RationalVector& phi) {
  RationalVector out;
  out.reserve(phi.size());
  for (const auto& p : phi) out.push_back(-p);
  return out;
}

/// Tight edges of the reduced weights that lie inside a strongly connected
/// component of the tight graph.
std::vector<EdgeId> saturated_cycle_edges(const Digraph& graph, const std::vector<std::int64_t>& weights,
                                          const MeanFraction<std::int64_t>& mean) {
  std::vector<std::int64_t> reduced;
  reduced.reserve(weights.size());
  for (std::int64_t w : weights) {
    const __int128 r = static_cast<__int128>(w) * mean.length - mean.weight;
    if (r >= kWeightLimit || r <= -kWeightLimit) throw InputError("reduced weight overflow");
    reduced.push_back(static_cast<std::int64_t>(r));
  }
  const auto potential = maxplus_potential<std::int64_t>(graph, reduced);
  std::vector<Edge> tight;
  std::vector<EdgeId> tight_ids;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [u, v] = graph.edge(e);
    if (potential[u] + reduced[e] == potential[v]) {
      tight.push_back({u, v});
      tight_ids.push_back(e);
    }
  }
  const Digraph tight_graph(graph.vertex_count(), tight);
  int count = 0;
  const auto comp = tight_graph.strongly_connected_components(&count);
  std::vector<int> size(count, 0);
  for (int c : comp) ++size[c];
  std::vector<EdgeId> result;
  for (std::size_t k = 0; k < tight.size(); ++k) {
    const auto [u, v] = tight[k];
    if (comp[u] != comp[v]) continue;
    if (size[comp[u]] > 1 || u == v) result.push_back(tight_ids[k]);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Vertex> shortest_cycle(const Digraph& graph, const std::vector<EdgeId>& edges) {
  for (EdgeId e : edges)
    if (graph.edge(e).source == graph.edge(e).target) return {graph.edge(e).source};
  std::vector<std::vector<Vertex>> next(graph.vertex_count());
  std::vector<Vertex> vertices;
  for (EdgeId e : edges) {
    next[graph.edge(e).source].push_back(graph.edge(e).target);
    vertices.push_back(graph.edge(e).source);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  std::vector<Vertex> best;
  for (Vertex s : vertices) {
    std::vector<Vertex> parent(graph.vertex_count(), -1);
    std::queue<Vertex> queue;
    queue.push(s);
    parent[s] = s;
    Vertex closing = -1;
    while (!queue.empty() && closing < 0) {
      const Vertex u = queue.front();
      queue.pop();
      for (Vertex v : next[u]) {
        if (v == s) {
          closing = u;
          break;
        }
        if (parent[v] == -1) {
          parent[v] = u;
          queue.push(v);
        }
      }
    }
    if (closing < 0) continue;
    std::vector<Vertex> cycle;
    for (Vertex v = closing; v != s; v = parent[v]) cycle.push_back(v);
    cycle.push_back(s);
    std::reverse(cycle.begin(), cycle.end());
    if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
  }
  return best;
}

CriticalSubgraph assemble(const Digraph& graph, std::vector<EdgeId> edges, Rational mean) {
  CriticalSubgraph sub;
  sub.mean = std::move(mean);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (EdgeId e : edges) {
    sub.vertices.push_back(graph.edge(e).source);
    sub.vertices.push_back(graph.edge(e).target);
  }
  std::sort(sub.vertices.begin(), sub.vertices.end());
  sub.vertices.erase(std::unique(sub.vertices.begin(), sub.vertices.end()), sub.vertices.end());
  sub.edges = std::move(edges);
  return sub;
}

Rational cycle_mean(const Digraph& graph, const RationalVector& phi, const std::vector<Vertex>& cycle) {
  Rational sum = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const EdgeId e = graph.find_edge(cycle[k], cycle[(k + 1) % cycle.size()]);
    if (e < 0) throw InvariantError("witness is not a cycle of the graph");
    sum += phi[e];
  }
  return sum / static_cast<long>(cycle.size());
}

}  // namespace

CycleMeanResult max_cycle_mean(const Digraph& graph, const RationalVector& phi) {
  const ScaledWeights scaled = scale_to_integers(graph, phi);
  const auto mean = karp_max_cycle_mean<std::int64_t>(graph, scaled.weights);
  CycleMeanResult result;
  result.value = Rational(BigInt(mean.weight), BigInt(mean.length)) / Rational(scaled.scale);
  result.witness = shortest_cycle(graph, saturated_cycle_edges(graph, scaled.weights, mean));
  if (result.witness.empty() || cycle_mean(graph, phi, result.witness) != result.value)
    throw InvariantError("maximum cycle mean witness does not attain the optimum");
  return result;
}

CycleMeanResult min_cycle_mean(const Digraph& graph, const RationalVector& phi) {
  CycleMeanResult result = max_cycle_mean(graph, negated(phi));
  result.value = -result.value;
  return result;
}

CriticalSubgraph critical_subgraph(const Digraph& graph, const RationalVector& phi, Optimum mode,
                                   bool verify, const OracleLimits& limits) {
  const RationalVector weights = mode == Optimum::max ? phi : negated(phi);
  const ScaledWeights scaled = scale_to_integers(graph, weights);
  const auto mean = karp_max_cycle_mean<std::int64_t>(graph, scaled.weights);
  const Rational optimum = Rational(BigInt(mean.weight), BigInt(mean.length)) / Rational(scaled.scale);
  CriticalSubgraph sub = assemble(graph, saturated_cycle_edges(graph, scaled.weights, mean),
                                  mode == Optimum::max ? optimum : Rational(-optimum));
  if (!verify) return sub;
  try {
    const CriticalSubgraph reference = elementary_cycles_oracle(graph, weights, optimum, limits);
    if (reference.vertices != sub.vertices || reference.edges != sub.edges)
      throw InvariantError("critical graph disagrees with elementary cycle enumeration");
    sub.verified = true;
  } catch (const OracleRefused&) {
    sub.verified = false;
  }
  return sub;
}

CriticalSubgraph elementary_cycles_oracle(const Digraph& graph, const RationalVector& phi, const Rational& mean,
                                          const OracleLimits& limits) {
  const int n = graph.vertex_count();
  if (n > limits.max_vertices)
    throw OracleRefused("cycle enumeration refused: " + std::to_string(n) + " vertices exceed the cap of " +
                        std::to_string(limits.max_vertices));
  const ScaledWeights scaled = scale_to_integers(graph, phi);
  const Rational target = mean * Rational(scaled.scale);
  const std::int64_t p = to_int64(boost::multiprecision::numerator(target), "target mean");
  const std::int64_t q = to_int64(boost::multiprecision::denominator(target), "target mean");
  std::vector<std::int64_t> reduced;
  for (std::int64_t w : scaled.weights) reduced.push_back(q * w - p);

  // Longest reduced path lengths bound what a partial path can still gain.
  constexpr std::int64_t none = std::numeric_limits<std::int64_t>::min();
  std::vector<std::vector<std::int64_t>> longest(n, std::vector<std::int64_t>(n, none));
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [u, v] = graph.edge(e);
    longest[u][v] = std::max(longest[u][v], reduced[e]);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (longest[i][k] == none) continue;
      for (int j = 0; j < n; ++j) {
        if (longest[k][j] == none) continue;
        const std::int64_t via = longest[i][k] + longest[k][j];
        // Positive cycles only inflate the values; they disable pruning below.
        if (via > longest[i][j]) longest[i][j] = std::min(via, kWeightLimit);
      }
    }
  bool prune = true;
  for (int v = 0; v < n; ++v)
    if (longest[v][v] != none && longest[v][v] > 0) prune = false;

  std::vector<EdgeId> found;
  std::vector<EdgeId> path_edges;
  std::vector<char> on_path(n, 0);
  std::int64_t closures = 0;
  std::int64_t expansions = 0;
  const std::int64_t max_expansions = limits.max_cycles * 50;

  auto refuse = [&]() {
    throw OracleRefused("cycle enumeration refused: more than " + std::to_string(limits.max_cycles) +
                        " elementary cycles");
  };
  auto visit = [&](auto&& self, Vertex start, Vertex v, std::int64_t sum) -> void {
    if (++expansions > max_expansions) refuse();
    for (EdgeId e : graph.out_edges(v)) {
      const Vertex w = graph.edge(e).target;
      const std::int64_t next = sum + reduced[e];
      if (w == start) {
        if (++closures > limits.max_cycles) refuse();
        if (next == 0) {
          found.insert(found.end(), path_edges.begin(), path_edges.end());
          found.push_back(e);
        }
        continue;
      }
      if (w < start || on_path[w] || longest[w][start] == none) continue;
      if (prune && next + longest[w][start] < 0) continue;
      on_path[w] = 1;
      path_edges.push_back(e);
      self(self, start, w, next);
      path_edges.pop_back();
      on_path[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    on_path[s] = 1;
    visit(visit, s, s, 0);
    on_path[s] = 0;
  }
  CriticalSubgraph sub = assemble(graph, std::move(found), mean);
  sub.verified = true;
  return sub;
}

Digraph critical_digraph(const Digraph& graph, const CriticalSubgraph& sub) {
  return graph.edge_subgraph(sub.edges, nullptr);
}

double subshift_entropy(const Digraph& graph, const CriticalSubgraph& sub) {
  const Digraph g = critical_digraph(graph, sub);
  int count = 0;
  const auto comp = g.strongly_connected_components(&count);
  double best = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < count; ++c) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (comp[v] == c) members.push_back(v);
    const Eigen::Index m = static_cast<Eigen::Index>(members.size());
    Matrix<double> a = Matrix<double>::Zero(m, m);
    bool has_edge = false;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        if (g.find_edge(members[i], members[j]) >= 0) {
          a(i, j) = 1.0;
          has_edge = true;
        }
    if (!has_edge) continue;
    // A + I is primitive for irreducible A, with the same eigenvector.
    const auto pf = pf_left_right((a + Matrix<double>::Identity(m, m)).eval());
    best = std::max(best, std::log(std::exp(pf.log_eigenvalue) - 1.0));
  }
  if (!std::isfinite(best)) throw InputError("subshift has no cycles");
  return best;
}

}  // namespace aiet
