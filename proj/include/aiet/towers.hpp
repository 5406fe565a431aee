#pragma once

#include <string>
#include <vector>

#include "aiet/digraph.hpp"
#include "aiet/linalg.hpp"
#include "aiet/rational.hpp"
#include "aiet/self_similar.hpp"

namespace aiet {

/// Itineraries of the Rokhlin towers over the renormalized intervals.
struct TowerWords {
  /// words[a][i] is the original interval visited by floor i of tower a.
  std::vector<std::vector<Letter>> words;
  std::vector<int> heights;  ///< q_a = |W_a|

  int total_height() const;
  /// Letter-count matrix; must equal the self-similarity matrix.
  IntMatrix abelianization() const;
};

/// Composes the per-step substitutions (loser -> loser winner for top
/// steps, loser -> winner loser for bottom steps) along the path.
///
/// Throws InputError for open paths and InvariantError if the letter counts
/// disagree with path_matrix.
TowerWords tower_words(const Permutation& perm, const RauzyPath& path);

/// Floor (a, i) of the tower over the renormalized interval a.
struct Floor {
  Letter letter;
  int level;
  friend auto operator<=>(const Floor&, const Floor&) = default;
};

/// The graph on the tower floors: ((b, j), (a, i)) is an edge iff floor i of
/// tower a lies in the original interval b. Vertices are ordered by
/// (alphabet position, level).
class TowerGraph {
 public:
  TowerGraph(const Permutation& perm, TowerWords words, const SlopeVector& omega);

  const Digraph& graph() const { return graph_; }
  const TowerWords& words() const { return words_; }
  int alphabet_size() const { return static_cast<int>(words_.words.size()); }
  int vertex_count() const { return graph_.vertex_count(); }
  int edge_count() const { return graph_.edge_count(); }

  const Floor& floor(Vertex v) const { return floors_[v]; }
  Vertex vertex(Floor f) const;
  /// Interval containing the floor, i.e. W_a[i].
  Letter interval_of(Vertex v) const { return words_.words[floors_[v].letter][floors_[v].level]; }
  /// "A0", "D7", ...
  std::string label(Vertex v) const;
  Vertex vertex(const std::string& label) const;

  /// Birkhoff sum of omega over the first `level` floors of the tower.
  const Rational& birkhoff(Vertex v) const { return birkhoff_[v]; }
  /// Edge potential: the Birkhoff value of the target floor.
  const RationalVector& phi() const { return phi_; }
  Vector<double> phi_double() const;

  /// M(t omega): sum over floors (a, i) in interval b of exp(t omega_(a,i)).
  Matrix<double> slope_matrix(double t) const;

 private:
  std::vector<std::string> alphabet_;
  TowerWords words_;
  std::vector<Floor> floors_;
  std::vector<int> first_vertex_;
  RationalVector birkhoff_;
  RationalVector phi_;
  Digraph graph_;
};

TowerGraph build_graph(const Permutation& perm, TowerWords words, const SlopeVector& omega);

/// Conformal measure of the exchanged intervals and of the tower floors.
struct IntervalMasses {
  Vector<double> intervals;  ///< nu(I_a), sums to 1
  Vector<double> floors;     ///< nu(T^i I^(n)_a) per vertex, sums to 1
  double rho = 0;
};

/// Left PF eigenvector of M(t omega) as a probability vector, spread over the
/// floors as exp(t omega_(a,i) - rho) nu_a. `rho` must be the log PF
/// eigenvalue of M(t omega) (checked to 1e-9, InvariantError otherwise).
IntervalMasses conformal_interval_masses(const TowerGraph& graph, double t, double rho);

/// theta(e) = -log(nu(target floor) / nu(interval of source)). Throws
/// InvariantError on nonpositive masses.
Vector<double> theta_potential(const TowerGraph& graph, const IntervalMasses& masses);

/// E (floors x letters) and D(t omega) (letters x floors) with
/// transfer = E D and M(t omega)^T = D E.
std::pair<Matrix<double>, Matrix<double>> factorization(const TowerGraph& graph, double t);

}  // namespace aiet
