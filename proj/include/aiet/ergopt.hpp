#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aiet/digraph.hpp"
#include "aiet/rational.hpp"

namespace aiet {

enum class Optimum { max, min };

struct CycleMeanResult {
  Rational value;
  /// Elementary cycle attaining the value: pairwise distinct vertices, closed
  /// by the edge from the last back to the first.
  std::vector<Vertex> witness;
};

/// Vertices and edges occurring in elementary cycles of optimal mean.
struct CriticalSubgraph {
  Rational mean;
  std::vector<Vertex> vertices;  ///< ascending
  std::vector<EdgeId> edges;     ///< ascending, ids of the parent graph
  bool verified = false;         ///< cross-checked against cycle enumeration

  friend bool operator==(const CriticalSubgraph& a, const CriticalSubgraph& b) {
    return a.mean == b.mean && a.vertices == b.vertices && a.edges == b.edges;
  }
};

struct OracleLimits {
  int max_vertices = 64;
  std::int64_t max_cycles = 10'000'000;
};

/// Raised when cycle enumeration would exceed its limits.
class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact maximum cycle mean (Karp over integers after clearing
/// denominators) with an elementary witness cycle.
CycleMeanResult max_cycle_mean(const Digraph& graph, const RationalVector& phi);

/// -max_cycle_mean(-phi).
CycleMeanResult min_cycle_mean(const Digraph& graph, const RationalVector& phi);

/// Critical graph via max-plus saturation: weights reduced by the optimal
/// mean, a potential solving the max-plus eigenproblem, tight edges, and
/// only those tight edges inside a strongly connected component of the tight
/// graph. When `verify` is set and the oracle accepts the input, the result is
/// compared with elementary_cycles_oracle and a mismatch throws
/// InvariantError; a refusal leaves `verified` false.
CriticalSubgraph critical_subgraph(const Digraph& graph, const RationalVector& phi, Optimum mode,
                                   bool verify = true, const OracleLimits& limits = {});

/// Reference implementation of the definition: enumerates elementary cycles
/// and keeps the union of those whose mean is exactly `mean`. Branches that
/// cannot reach mean `mean` are cut when no cycle exceeds it. Throws
/// OracleRefused beyond `limits`.
CriticalSubgraph elementary_cycles_oracle(const Digraph& graph, const RationalVector& phi,
                                          const Rational& mean, const OracleLimits& limits = {});

/// Subgraph on the critical edges, with vertices renumbered ascending.
Digraph critical_digraph(const Digraph& graph, const CriticalSubgraph& sub);

/// Log spectral radius of the subgraph's adjacency matrix (maximum over its
/// nontrivial strongly connected components).
double subshift_entropy(const Digraph& graph, const CriticalSubgraph& sub);

}  // namespace aiet
