#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aiet/ergopt.hpp"
#include "aiet/self_similar.hpp"
#include "aiet/thermo.hpp"
#include "aiet/towers.hpp"

namespace aiet {

/// Everything the regularity formulas need for one (system, omega) pair.
struct RegularityModel {
  SelfSimilarSystem system;
  SlopeVector omega;
  TowerGraph towers;
  Vector<double> phi;        ///< Birkhoff edge potential as doubles
  CycleMeanResult phi_max;   ///< maximal cycle mean and witness
  CycleMeanResult phi_min;
  CriticalSubgraph maximizing;
  CriticalSubgraph minimizing;
  double h_top = 0;          ///< entropy of the full tower shift
  double h_top_max = 0;      ///< entropy of the maximizing subshift
  double h_top_min = 0;
  double rho_prime0 = 0;     ///< integral of phi against the Parry measure
  ThermoOptions thermo{};

  /// Builds towers, graph, optimal cycle means, critical subgraphs (checked
  /// against cycle enumeration when `verify_critical` is set) and entropies.
  static RegularityModel build(SelfSimilarSystem system, RationalVector omega, bool verify_critical = true);

  /// Potential cohomologous to a constant (maximal and minimal means agree).
  bool degenerate() const { return phi_max.value == phi_min.value; }

  double rho(double t) const;
  double rho_prime(double t) const;
};

struct RegularityRow {
  double t = 0;
  double rho = 0;
  double rho_prime = 0;
  double dim_mu = 0;
  double dim_nu = 0;
  double holder_h = 0;
  double holder_hinv = 0;
};

/// Limits of the regularity quantities as t -> +infinity and -infinity.
struct LimitConstants {
  double h_top_X = 0;
  double h_top_Xmax = 0;
  double h_top_Xmin = 0;
  Rational phi_bar;
  Rational phi_under;
  double rho_prime_0 = 0;
  bool degenerate = false;  ///< limits below are NaN when set
  double lim_holder_hinv_pos = 0;   ///< also the limit of dim_nu
  double lim_t_holder_h_pos = 0;
  double lim_t_dim_mu_pos = 0;
  double lim_holder_hinv_neg = 0;
  double lim_t_holder_h_neg = 0;    ///< limit of |t| holder_h
  double lim_t_dim_mu_neg = 0;      ///< limit of |t| dim_mu
};

struct RegularityCurve {
  std::vector<RegularityRow> rows;
  LimitConstants constants;
};

/// One row of the curve: pressure, its derivative, both dimensions and both
/// Hoelder exponents. For t < 0 the roles of the maximal and minimal means
/// are swapped in the Hoelder formulas.
RegularityRow regularity_row(const RegularityModel& model, double t);

/// Rows for every grid point, evaluated on up to `threads` threads; output
/// order follows the grid.
RegularityCurve curve(const RegularityModel& model, std::span<const double> t_grid, int threads = 1);

/// Limit constants. Throws InvariantError if the minimal mean, the Parry
/// integral and the maximal mean are not strictly increasing (gap > 1e-9) for
/// a non-degenerate potential.
LimitConstants limit_constants(const RegularityModel& model);

struct MonotonicityViolation {
  std::string quantity;
  double t = 0;
  double magnitude = 0;
};

struct MonotonicityReport {
  std::vector<MonotonicityViolation> violations;  ///< all with magnitude > tolerance
  double worst = 0;
  bool ok() const { return violations.empty(); }
};

/// Every quantity must be non-increasing in |t| on each half-line, and
/// rho(t) - t * phi_under non-decreasing on t >= 0.
MonotonicityReport monotonicity_report(const RegularityCurve& curve, double tolerance = 1e-10);

/// Rows violating 0 < holder <= dim <= 1 beyond `tolerance`.
std::vector<MonotonicityViolation> bound_chain_violations(const RegularityCurve& curve, double tolerance = 1e-12);

/// Evenly spaced grid of `steps` points on [min, max].
std::vector<double> linear_grid(double min, double max, int steps);

}  // namespace aiet
