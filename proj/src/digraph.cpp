#include "aiet/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "aiet/errors.hpp"

namespace aiet {

Digraph::Digraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)), out_(vertex_count), in_(vertex_count) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InputError("digraph has parallel edges");
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("digraph edge out of range");
    out_[u].push_back(e);
    in_[v].push_back(e);
  }
}

EdgeId Digraph::find_edge(Vertex u, Vertex v) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  return it != edges_.end() && *it == Edge{u, v} ? static_cast<EdgeId>(it - edges_.begin()) : -1;
}

Matrix<double> Digraph::adjacency() const {
  Matrix<double> a = Matrix<double>::Zero(n_, n_);
  for (const auto& [u, v] : edges_) a(u, v) = 1.0;
  return a;
}

std::vector<int> Digraph::strongly_connected_components(int* component_count) const {
  // Iterative Tarjan.
  std::vector<int> index(n_, -1), low(n_, 0), comp(n_, -1);
  std::vector<bool> on_stack(n_, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;
  int counter = 0, components = 0;
  for (Vertex root = 0; root < n_; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < out_[v].size()) {
        const Vertex w = edges_[out_[v][next++]].target;
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const Vertex finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  if (component_count) *component_count = components;
  return comp;
}

bool Digraph::is_strongly_connected() const {
  if (n_ == 0) return false;
  int count = 0;
  strongly_connected_components(&count);
  return count == 1;
}

int Digraph::period() const {
  if (!is_strongly_connected()) throw InputError("period of a graph that is not strongly connected");
  std::vector<int> level(n_, -1);
  std::queue<Vertex> queue;
  level[0] = 0;
  queue.push(0);
  int g = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    for (EdgeId e : out_[u]) {
      const Vertex v = edges_[e].target;
      if (level[v] == -1) {
        level[v] = level[u] + 1;
        queue.push(v);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
      }
    }
  }
  return g;
}

Digraph Digraph::edge_subgraph(const std::vector<EdgeId>& edges, std::vector<Vertex>* vertex_map) const {
  std::vector<Vertex> vertices;
  for (EdgeId e : edges) {
    vertices.push_back(edges_[e].source);
    vertices.push_back(edges_[e].target);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  auto local = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  std::vector<Edge> sub;
  for (EdgeId e : edges) sub.push_back({local(edges_[e].source), local(edges_[e].target)});
  if (vertex_map) *vertex_map = vertices;
  return Digraph(static_cast<int>(vertices.size()), std::move(sub));
}

}  // namespace aiet
