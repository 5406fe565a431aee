#pragma once

#include <span>

#include "aiet/digraph.hpp"
#include "aiet/linalg.hpp"
#include "aiet/perron.hpp"

namespace aiet {

enum class Conditioning { automatic, never, always };

/// Perron-Frobenius data of the edge-weighted transfer matrix of t * phi.
///
/// When conditioned, `matrix` holds exp(t phi(a,b) - shift + g_a - g_b) for a
/// max-plus gauge g, so every entry is at most 1; the eigenvectors are those
/// of the conditioned matrix. Cylinder masses and `log_pf` are unaffected.
struct TransferData {
  Matrix<double> matrix;
  double log_pf = 0;          ///< pressure of t * phi (unshifted)
  Vector<double> left;        ///< left^T right = 1
  Vector<double> right;       ///< |right| = 1
  double shift_used = 0;
  Vector<double> gauge;
  double t = 0;
  bool conditioned = false;
};

struct ThermoOptions {
  Conditioning conditioning = Conditioning::automatic;
  /// Automatic conditioning kicks in when |t| (max phi - min phi) exceeds this.
  double conditioning_threshold = 500.0;
  PowerIterationOptions power{};
};

/// Builds the transfer matrix of t * phi on a strongly connected aperiodic
/// graph. `phi` is indexed by edge id.
TransferData transfer(const Digraph& graph, const Vector<double>& phi, double t,
                      const ThermoOptions& options = {});

/// Topological pressure of t * phi.
double pressure(const Digraph& graph, const Vector<double>& phi, double t, const ThermoOptions& options = {});

/// Pressure of the zero potential.
double entropy(const Digraph& graph);

/// Gibbs measure of the cylinder [y_0 ... y_k]; zero for inadmissible words.
double gibbs_cylinder(const TransferData& data, std::span<const Vertex> word);

/// Gibbs measure of every 2-cylinder, indexed by edge id.
Vector<double> edge_measure(const Digraph& graph, const TransferData& data);

/// d/dt of the pressure of t * phi: the integral of phi against the Gibbs
/// measure of t * phi.
double pressure_derivative(const Digraph& graph, const Vector<double>& phi, double t,
                           const ThermoOptions& options = {});

}  // namespace aiet
