#include "aiet/towers.hpp"

#include <cmath>

#include "aiet/errors.hpp"
#include "aiet/perron.hpp"

namespace aiet {

int TowerWords::total_height() const {
  int total = 0;
  for (int q : heights) total += q;
  return total;
}

IntMatrix TowerWords::abelianization() const {
  const int d = static_cast<int>(words.size());
  IntMatrix counts = IntMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (Letter b : words[a]) counts(a, b) += 1;
  return counts;
}

TowerWords tower_words(const Permutation& perm, const RauzyPath& path) {
  const IntMatrix m = path_matrix(perm, path);
  const auto walk = rauzy_walk(perm, path);
  const int d = perm.size();

  TowerWords out;
  out.words.resize(d);
  for (Letter a = 0; a < d; ++a) {
    std::vector<Letter> word{a};
    for (auto step = walk.rbegin(); step != walk.rend(); ++step) {
      std::vector<Letter> image;
      image.reserve(word.size() * 2);
      for (Letter c : word) {
        if (c != step->loser) {
          image.push_back(c);
        } else if (step->kind == StepKind::top) {
          image.push_back(step->loser);
          image.push_back(step->winner);
        } else {
          image.push_back(step->winner);
          image.push_back(step->loser);
        }
      }
      word = std::move(image);
    }
    out.words[a] = std::move(word);
    out.heights.push_back(static_cast<int>(out.words[a].size()));
  }
  if (out.abelianization() != m)
    throw InvariantError("tower words disagree with the self-similarity matrix");
  return out;
}

TowerGraph::TowerGraph(const Permutation& perm, TowerWords words, const SlopeVector& omega)
    : alphabet_(perm.alphabet()), words_(std::move(words)) {
  const int d = alphabet_size();
  if (omega.size() != d) throw InputError("omega size does not match the alphabet");
  for (Letter a = 0; a < d; ++a) {
    first_vertex_.push_back(static_cast<int>(floors_.size()));
    Rational sum = 0;
    for (int i = 0; i < words_.heights[a]; ++i) {
      floors_.push_back({a, i});
      birkhoff_.push_back(sum);
      sum += omega[words_.words[a][i]];
    }
  }
  // Source (b, j) connects to every floor lying in interval b.
  std::vector<std::vector<Vertex>> floors_in(d);
  for (Vertex v = 0; v < static_cast<int>(floors_.size()); ++v) floors_in[interval_of(v)].push_back(v);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < static_cast<int>(floors_.size()); ++u)
    for (Vertex v : floors_in[floors_[u].letter]) edges.push_back({u, v});
  graph_ = Digraph(static_cast<int>(floors_.size()), std::move(edges));
  phi_.reserve(graph_.edge_count());
  for (const Edge& e : graph_.edges()) phi_.push_back(birkhoff_[e.target]);
}

Vertex TowerGraph::vertex(Floor f) const {
  if (f.letter < 0 || f.letter >= alphabet_size() || f.level < 0 || f.level >= words_.heights[f.letter])
    throw InputError("no such tower floor");
  return first_vertex_[f.letter] + f.level;
}

std::string TowerGraph::label(Vertex v) const {
  return alphabet_[floors_[v].letter] + std::to_string(floors_[v].level);
}

Vertex TowerGraph::vertex(const std::string& label) const {
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (this->label(v) == label) return v;
  throw InputError("no tower floor labelled '" + label + "'");
}

Vector<double> TowerGraph::phi_double() const {
  Vector<double> out(phi_.size());
  for (std::size_t e = 0; e < phi_.size(); ++e) out(e) = to_double(phi_[e]);
  return out;
}

Matrix<double> TowerGraph::slope_matrix(double t) const {
  const int d = alphabet_size();
  Matrix<double> m = Matrix<double>::Zero(d, d);
  for (Vertex v = 0; v < vertex_count(); ++v)
    m(floors_[v].letter, interval_of(v)) += std::exp(t * to_double(birkhoff_[v]));
  return m;
}

TowerGraph build_graph(const Permutation& perm, TowerWords words, const SlopeVector& omega) {
  return TowerGraph(perm, std::move(words), omega);
}

IntervalMasses conformal_interval_masses(const TowerGraph& graph, double t, double rho) {
  const auto pf = pf_left_right(graph.slope_matrix(t));
  if (std::abs(pf.log_eigenvalue - rho) > 1e-9)
    throw InvariantError("rho " + std::to_string(rho) + " is not the log PF eigenvalue of M(t omega) (" +
                         std::to_string(pf.log_eigenvalue) + ")");
  IntervalMasses masses;
  masses.rho = rho;
  masses.intervals = pf.left / pf.left.sum();
  masses.floors.resize(graph.vertex_count());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    masses.floors(v) = std::exp(t * to_double(graph.birkhoff(v)) - rho) *
                       masses.intervals(graph.floor(v).letter);
  }
  return masses;
}

Vector<double> theta_potential(const TowerGraph& graph, const IntervalMasses& masses) {
  Vector<double> theta(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [u, v] = graph.graph().edge(e);
    const double target = masses.floors(v);
    const double source_interval = masses.intervals(graph.floor(u).letter);
    if (!(target > 0) || !(source_interval > 0))
      throw InvariantError("nonpositive conformal mass on edge " + graph.label(u) + "->" + graph.label(v));
    theta(e) = -std::log(target / source_interval);
  }
  return theta;
}

std::pair<Matrix<double>, Matrix<double>> factorization(const TowerGraph& graph, double t) {
  const int d = graph.alphabet_size();
  const int n = graph.vertex_count();
  Matrix<double> e = Matrix<double>::Zero(n, d);
  Matrix<double> dm = Matrix<double>::Zero(d, n);
  for (Vertex v = 0; v < n; ++v) {
    e(v, graph.floor(v).letter) = 1.0;
    dm(graph.interval_of(v), v) = std::exp(t * to_double(graph.birkhoff(v)));
  }
  return {e, dm};
}

}  // namespace aiet
