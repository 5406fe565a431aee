#include "aiet/regularity.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "aiet/errors.hpp"

namespace aiet {

RegularityModel RegularityModel::build(SelfSimilarSystem system, RationalVector omega, bool verify_critical) {
  SlopeVector slope(system, std::move(omega));
  TowerGraph towers = build_graph(system.permutation, tower_words(system.permutation, system.path), slope);
  RegularityModel model{std::move(system), std::move(slope), std::move(towers), {}, {}, {}, {}, {}};
  const Digraph& g = model.towers.graph();
  model.phi = model.towers.phi_double();
  model.phi_max = max_cycle_mean(g, model.towers.phi());
  model.phi_min = min_cycle_mean(g, model.towers.phi());
  // With equal extreme means every cycle is optimal and enumeration cannot prune.
  const bool verify = verify_critical && model.phi_max.value != model.phi_min.value;
  model.maximizing = critical_subgraph(g, model.towers.phi(), Optimum::max, verify);
  model.minimizing = critical_subgraph(g, model.towers.phi(), Optimum::min, verify);
  if (model.maximizing.mean != model.phi_max.value || model.minimizing.mean != model.phi_min.value)
    throw InvariantError("critical subgraph means disagree with the cycle-mean results");
  model.h_top = entropy(g);
  model.h_top_max = subshift_entropy(g, model.maximizing);
  model.h_top_min = subshift_entropy(g, model.minimizing);
  model.rho_prime0 = pressure_derivative(g, model.phi, 0.0);
  return model;
}

double RegularityModel::rho(double t) const { return pressure(towers.graph(), phi, t, thermo); }

double RegularityModel::rho_prime(double t) const {
  return pressure_derivative(towers.graph(), phi, t, thermo);
}

RegularityRow regularity_row(const RegularityModel& model, double t) {
  const Digraph& g = model.towers.graph();
  const TransferData data = transfer(g, model.phi, t, model.thermo);
  const Vector<double> m = edge_measure(g, data);
  RegularityRow row;
  row.t = t;
  row.rho = data.log_pf;
  row.rho_prime = model.phi.dot(m);
  const double rho0 = model.system.rho0;
  const double phi_bar = to_double(model.phi_max.value);
  const double phi_under = to_double(model.phi_min.value);
  row.dim_mu = rho0 / (row.rho - model.rho_prime0 * t);
  row.dim_nu = (row.rho - row.rho_prime * t) / rho0;
  if (t >= 0) {
    row.holder_h = rho0 / (row.rho - t * phi_under);
    row.holder_hinv = (row.rho - t * phi_bar) / rho0;
  } else {
    row.holder_h = rho0 / (row.rho - t * phi_bar);
    row.holder_hinv = (row.rho - t * phi_under) / rho0;
  }
  return row;
}

RegularityCurve curve(const RegularityModel& model, std::span<const double> t_grid, int threads) {
  RegularityCurve out;
  out.constants = limit_constants(model);
  out.rows.resize(t_grid.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, t_grid.size()));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t k = w; k < t_grid.size(); k += workers) out.rows[k] = regularity_row(model, t_grid[k]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

LimitConstants limit_constants(const RegularityModel& model) {
  LimitConstants c;
  c.h_top_X = model.h_top;
  c.h_top_Xmax = model.h_top_max;
  c.h_top_Xmin = model.h_top_min;
  c.phi_bar = model.phi_max.value;
  c.phi_under = model.phi_min.value;
  c.rho_prime_0 = model.rho_prime0;
  c.degenerate = model.degenerate();
  if (c.degenerate) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.lim_holder_hinv_pos = c.lim_t_holder_h_pos = c.lim_t_dim_mu_pos = nan;
    c.lim_holder_hinv_neg = c.lim_t_holder_h_neg = c.lim_t_dim_mu_neg = nan;
    return c;
  }
  const double bar = to_double(c.phi_bar);
  const double under = to_double(c.phi_under);
  if (!(bar - c.rho_prime_0 > 1e-9) || !(c.rho_prime_0 - under > 1e-9))
    throw InvariantError("Parry integral " + std::to_string(c.rho_prime_0) + " is not strictly between " +
                         to_string(c.phi_under) + " and " + to_string(c.phi_bar));
  c.lim_holder_hinv_pos = c.h_top_Xmax / c.h_top_X;
  c.lim_t_holder_h_pos = c.h_top_X / (bar - under);
  c.lim_t_dim_mu_pos = c.h_top_X / (bar - c.rho_prime_0);
  c.lim_holder_hinv_neg = c.h_top_Xmin / c.h_top_X;
  c.lim_t_holder_h_neg = c.h_top_X / (bar - under);
  c.lim_t_dim_mu_neg = c.h_top_X / (c.rho_prime_0 - under);
  return c;
}

MonotonicityReport monotonicity_report(const RegularityCurve& curve, double tolerance) {
  MonotonicityReport report;
  std::vector<const RegularityRow*> positive, negative;
  for (const auto& row : curve.rows) {
    if (row.t >= 0) positive.push_back(&row);
    if (row.t <= 0) negative.push_back(&row);
  }
  std::sort(positive.begin(), positive.end(), [](auto* a, auto* b) { return a->t < b->t; });
  std::sort(negative.begin(), negative.end(), [](auto* a, auto* b) { return a->t > b->t; });

  const double phi_under = to_double(curve.constants.phi_under);
  auto check = [&](const std::string& name, double t, double increase) {
    report.worst = std::max(report.worst, increase);
    if (increase > tolerance) report.violations.push_back({name, t, increase});
  };
  for (const auto* half : {&positive, &negative}) {
    for (std::size_t k = 1; k < half->size(); ++k) {
      const RegularityRow& a = *(*half)[k - 1];
      const RegularityRow& b = *(*half)[k];
      check("holder_h", b.t, b.holder_h - a.holder_h);
      check("holder_hinv", b.t, b.holder_hinv - a.holder_hinv);
      check("dim_mu", b.t, b.dim_mu - a.dim_mu);
      check("dim_nu", b.t, b.dim_nu - a.dim_nu);
      if (half == &positive)
        check("rho_minus_t_phi_under", b.t, (a.rho - a.t * phi_under) - (b.rho - b.t * phi_under));
    }
  }
  return report;
}

std::vector<MonotonicityViolation> bound_chain_violations(const RegularityCurve& curve, double tolerance) {
  std::vector<MonotonicityViolation> out;
  for (const auto& row : curve.rows) {
    auto need = [&](const char* what, double slack) {
      if (slack < -tolerance) out.push_back({what, row.t, -slack});
    };
    need("holder_h > 0", row.holder_h);
    need("holder_hinv > 0", row.holder_hinv);
    need("holder_h <= dim_mu", row.dim_mu - row.holder_h);
    need("holder_hinv <= dim_nu", row.dim_nu - row.holder_hinv);
    need("dim_mu <= 1", 1.0 - row.dim_mu);
    need("dim_nu <= 1", 1.0 - row.dim_nu);
    if (!(row.holder_h > 0) || !(row.holder_hinv > 0)) out.push_back({"positivity", row.t, 0.0});
  }
  return out;
}

std::vector<double> linear_grid(double min, double max, int steps) {
  if (steps < 1) throw InputError("grid needs at least one point");
  if (min > max) throw InputError("grid minimum exceeds maximum");
  std::vector<double> grid(steps);
  for (int k = 0; k < steps; ++k)
    grid[k] = steps == 1 ? min : (min * (steps - 1 - k) + max * k) / (steps - 1);
  return grid;
}

}  // namespace aiet
