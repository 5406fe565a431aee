#include "aiet/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "aiet/errors.hpp"
#include "aiet/maxplus.hpp"

namespace aiet {

TransferData transfer(const Digraph& graph, const Vector<double>& phi, double t,
                      const ThermoOptions& options) {
  const int n = graph.vertex_count();
  if (static_cast<int>(phi.size()) != graph.edge_count())
    throw InputError("edge potential size does not match the graph");
  if (!graph.is_strongly_connected() || !graph.is_aperiodic())
    throw InputError("transfer matrix needs a strongly connected aperiodic graph");

  TransferData data;
  data.t = t;
  data.gauge = Vector<double>::Zero(n);
  const double range = phi.size() == 0 ? 0.0 : std::abs(t) * (phi.maxCoeff() - phi.minCoeff());
  data.conditioned = options.conditioning == Conditioning::always ||
                     (options.conditioning == Conditioning::automatic && range > options.conditioning_threshold);

  std::vector<double> weights(phi.size());
  for (Eigen::Index e = 0; e < phi.size(); ++e) weights[e] = t * phi(e);
  if (data.conditioned) {
    const auto mean = karp_max_cycle_mean<double>(graph, weights);
    data.shift_used = mean.weight / static_cast<double>(mean.length);
    for (double& w : weights) w -= data.shift_used;
    const double slack = 1e-12 * std::max(1.0, range);
    const auto potential = maxplus_potential<double>(graph, weights, slack);
    for (int v = 0; v < n; ++v) data.gauge(v) = potential[v];
  }

  data.matrix = Matrix<double>::Zero(n, n);
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [u, v] = graph.edge(e);
    const double exponent = weights[e] + data.gauge(u) - data.gauge(v);
    data.matrix(u, v) = std::exp(exponent);
    if (!std::isfinite(data.matrix(u, v)))
      throw NumericError("transfer matrix overflow at t = " + std::to_string(t) +
                         "; use Conditioning::always");
  }

  PowerIterationOptions power = options.power;
  power.check_primitive = !data.conditioned && power.check_primitive;
  const auto pf = pf_left_right(data.matrix, power);
  data.log_pf = pf.log_eigenvalue + data.shift_used;
  data.left = pf.left;
  data.right = pf.right;
  return data;
}

double pressure(const Digraph& graph, const Vector<double>& phi, double t, const ThermoOptions& options) {
  return transfer(graph, phi, t, options).log_pf;
}

double entropy(const Digraph& graph) {
  const Vector<double> zero = Vector<double>::Zero(graph.edge_count());
  return pressure(graph, zero, 0.0);
}

double gibbs_cylinder(const TransferData& data, std::span<const Vertex> word) {
  if (word.empty()) return 1.0;
  const double local_log_pf = data.log_pf - data.shift_used;
  double mass = data.left(word.front());
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    const double entry = data.matrix(word[i], word[i + 1]);
    if (entry == 0.0) return 0.0;
    mass *= entry * std::exp(-local_log_pf);
  }
  return mass * data.right(word.back());
}

Vector<double> edge_measure(const Digraph& graph, const TransferData& data) {
  const double scale = std::exp(-(data.log_pf - data.shift_used));
  Vector<double> m(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto [u, v] = graph.edge(e);
    m(e) = scale * data.left(u) * data.matrix(u, v) * data.right(v);
  }
  return m;
}

double pressure_derivative(const Digraph& graph, const Vector<double>& phi, double t,
                           const ThermoOptions& options) {
  const TransferData data = transfer(graph, phi, t, options);
  const Vector<double> m = edge_measure(graph, data);
  double sum = 0;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) sum += phi(e) * m(e);
  return sum;
}

}  // namespace aiet
