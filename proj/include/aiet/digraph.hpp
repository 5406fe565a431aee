#pragma once

#include <utility>
#include <vector>

#include "aiet/linalg.hpp"

namespace aiet {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex source;
  Vertex target;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite directed graph without parallel edges. Edge ids follow the sorted
/// (source, target) order.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }
  /// Edge id of (u, v) or -1.
  EdgeId find_edge(Vertex u, Vertex v) const;

  Matrix<double> adjacency() const;

  /// Component id per vertex (Tarjan); ids are in reverse topological order.
  std::vector<int> strongly_connected_components(int* component_count = nullptr) const;
  bool is_strongly_connected() const;
  /// gcd of cycle lengths of a strongly connected graph.
  int period() const;
  bool is_aperiodic() const { return period() == 1; }

  /// Subgraph on the given edges, vertices renumbered in ascending order.
  /// `vertex_map` receives the original id of each new vertex.
  Digraph edge_subgraph(const std::vector<EdgeId>& edges, std::vector<Vertex>* vertex_map) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

}  // namespace aiet
