#pragma once

#include <string>
#include <vector>

#include "aiet/regularity.hpp"

namespace aiet {

/// Machine-readable result of one analysis. Rationals are kept as exact
/// strings; reals are rounded to 15 significant digits on construction so
/// that the JSON form round-trips exactly.
struct SummaryRecord {
  std::vector<std::string> alphabet;
  std::vector<std::vector<long long>> M;
  double theta0 = 0;
  std::vector<double> lambda;
  std::vector<int> q;
  int sigma_size = 0;
  int edge_count = 0;
  std::string phi_bar;
  std::string phi_under;
  std::vector<std::string> sigma_max;
  std::vector<std::string> sigma_min;
  std::vector<std::vector<int>> adjacency_max;
  std::vector<std::vector<int>> adjacency_min;
  bool critical_verified = false;
  double h_top_X = 0;
  double h_top_max = 0;
  double h_top_min = 0;
  double rho_prime_0 = 0;
  bool degenerate = false;
  /// Limits, absent (null) for degenerate potentials.
  std::optional<double> lim_holder_hinv_pos, lim_t_holder_h_pos, lim_t_dim_mu_pos;
  std::optional<double> lim_holder_hinv_neg, lim_t_holder_h_neg, lim_t_dim_mu_neg;
  int genus = 0;
  int kappa = 0;
  std::string spectral_type;

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

/// Rounds to 15 significant digits.
double round15(double value);

SummaryRecord make_summary(const RegularityModel& model, const LimitConstants& constants);

std::string to_json(const SummaryRecord& record);
/// Throws InputError on unknown or missing fields.
SummaryRecord summary_from_json(const std::string& text);

/// Adjacency matrix of a critical subgraph restricted to its vertices.
std::vector<std::vector<int>> critical_adjacency(const Digraph& graph, const CriticalSubgraph& sub);

}  // namespace aiet
