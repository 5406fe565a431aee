#include "aiet/summary.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "aiet/errors.hpp"

namespace aiet {

using nlohmann::json;

double round15(double value) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 14);
  double out = 0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::vector<std::vector<int>> critical_adjacency(const Digraph& graph, const CriticalSubgraph& sub) {
  const int n = static_cast<int>(sub.vertices.size());
  std::vector<int> index(graph.vertex_count(), -1);
  for (int k = 0; k < n; ++k) index[sub.vertices[k]] = k;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (EdgeId e : sub.edges) a[index[graph.edge(e).source]][index[graph.edge(e).target]] = 1;
  return a;
}

SummaryRecord make_summary(const RegularityModel& model, const LimitConstants& c) {
  const SelfSimilarSystem& sys = model.system;
  const TowerGraph& towers = model.towers;
  SummaryRecord r;
  r.alphabet = sys.permutation.alphabet();
  for (int i = 0; i < sys.matrix.rows(); ++i) {
    r.M.emplace_back();
    for (int j = 0; j < sys.matrix.cols(); ++j) r.M.back().push_back(sys.matrix(i, j));
  }
  r.theta0 = round15(sys.theta0);
  for (int i = 0; i < sys.lambda.size(); ++i) r.lambda.push_back(round15(sys.lambda(i)));
  r.q = towers.words().heights;
  r.sigma_size = towers.vertex_count();
  r.edge_count = towers.edge_count();
  r.phi_bar = to_string(c.phi_bar);
  r.phi_under = to_string(c.phi_under);
  for (Vertex v : model.maximizing.vertices) r.sigma_max.push_back(towers.label(v));
  for (Vertex v : model.minimizing.vertices) r.sigma_min.push_back(towers.label(v));
  r.adjacency_max = critical_adjacency(towers.graph(), model.maximizing);
  r.adjacency_min = critical_adjacency(towers.graph(), model.minimizing);
  r.critical_verified = model.maximizing.verified && model.minimizing.verified;
  r.h_top_X = round15(c.h_top_X);
  r.h_top_max = round15(c.h_top_Xmax);
  r.h_top_min = round15(c.h_top_Xmin);
  r.rho_prime_0 = round15(c.rho_prime_0);
  r.degenerate = c.degenerate;
  if (!c.degenerate) {
    r.lim_holder_hinv_pos = round15(c.lim_holder_hinv_pos);
    r.lim_t_holder_h_pos = round15(c.lim_t_holder_h_pos);
    r.lim_t_dim_mu_pos = round15(c.lim_t_dim_mu_pos);
    r.lim_holder_hinv_neg = round15(c.lim_holder_hinv_neg);
    r.lim_t_holder_h_neg = round15(c.lim_t_holder_h_neg);
    r.lim_t_dim_mu_neg = round15(c.lim_t_dim_mu_neg);
  }
  r.genus = sys.spectrum.genus;
  r.kappa = sys.spectrum.kappa;
  r.spectral_type = to_string(sys.spectrum.type);
  return r;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const char* const limit_keys[] = {"lim_holder_hinv_pos", "lim_t_holder_h_pos", "lim_t_dim_mu_pos",
                                  "lim_holder_hinv_neg", "lim_abs_t_holder_h_neg", "lim_abs_t_dim_mu_neg"};

std::optional<double>* limit_fields(SummaryRecord& r, int k) {
  std::optional<double>* fields[] = {&r.lim_holder_hinv_pos, &r.lim_t_holder_h_pos, &r.lim_t_dim_mu_pos,
                                     &r.lim_holder_hinv_neg, &r.lim_t_holder_h_neg, &r.lim_t_dim_mu_neg};
  return fields[k];
}

void check_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!keys.contains(key)) throw InputError(where + ": unknown field " + key);
  for (const auto& key : keys)
    if (!j.contains(key)) throw InputError(where + ": missing field " + key);
}

}  // namespace

std::string to_json(const SummaryRecord& r) {
  json limits = json::object();
  SummaryRecord copy = r;
  for (int k = 0; k < 6; ++k) limits[limit_keys[k]] = optional_number(*limit_fields(copy, k));
  json j = {
      {"alphabet", r.alphabet},
      {"M", r.M},
      {"theta0", r.theta0},
      {"lambda", r.lambda},
      {"q", r.q},
      {"sigma_size", r.sigma_size},
      {"edge_count", r.edge_count},
      {"phi_bar", r.phi_bar},
      {"phi_under", r.phi_under},
      {"sigma_max", r.sigma_max},
      {"sigma_min", r.sigma_min},
      {"adjacency_max", r.adjacency_max},
      {"adjacency_min", r.adjacency_min},
      {"critical_verified", r.critical_verified},
      {"h_top_X", r.h_top_X},
      {"h_top_max", r.h_top_max},
      {"h_top_min", r.h_top_min},
      {"rho_prime_0", r.rho_prime_0},
      {"degenerate", r.degenerate},
      {"limits", limits},
      {"spectral", {{"g", r.genus}, {"kappa", r.kappa}, {"type", r.spectral_type}}},
  };
  return j.dump(2) + "\n";
}

SummaryRecord summary_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("summary: malformed JSON: ") + e.what());
  }
  check_keys(j,
             {"alphabet", "M", "theta0", "lambda", "q", "sigma_size", "edge_count", "phi_bar", "phi_under",
              "sigma_max", "sigma_min", "adjacency_max", "adjacency_min", "critical_verified", "h_top_X",
              "h_top_max", "h_top_min", "rho_prime_0", "degenerate", "limits", "spectral"},
             "summary");
  SummaryRecord r;
  try {
    j.at("alphabet").get_to(r.alphabet);
    j.at("M").get_to(r.M);
    j.at("theta0").get_to(r.theta0);
    j.at("lambda").get_to(r.lambda);
    j.at("q").get_to(r.q);
    j.at("sigma_size").get_to(r.sigma_size);
    j.at("edge_count").get_to(r.edge_count);
    j.at("phi_bar").get_to(r.phi_bar);
    j.at("phi_under").get_to(r.phi_under);
    j.at("sigma_max").get_to(r.sigma_max);
    j.at("sigma_min").get_to(r.sigma_min);
    j.at("adjacency_max").get_to(r.adjacency_max);
    j.at("adjacency_min").get_to(r.adjacency_min);
    j.at("critical_verified").get_to(r.critical_verified);
    j.at("h_top_X").get_to(r.h_top_X);
    j.at("h_top_max").get_to(r.h_top_max);
    j.at("h_top_min").get_to(r.h_top_min);
    j.at("rho_prime_0").get_to(r.rho_prime_0);
    j.at("degenerate").get_to(r.degenerate);
    const json& limits = j.at("limits");
    check_keys(limits, {std::begin(limit_keys), std::end(limit_keys)}, "summary.limits");
    for (int k = 0; k < 6; ++k) {
      const json& v = limits.at(limit_keys[k]);
      if (!v.is_null()) *limit_fields(r, k) = v.get<double>();
    }
    const json& spectral = j.at("spectral");
    check_keys(spectral, {"g", "kappa", "type"}, "summary.spectral");
    spectral.at("g").get_to(r.genus);
    spectral.at("kappa").get_to(r.kappa);
    spectral.at("type").get_to(r.spectral_type);
  } catch (const json::exception& e) {
    throw InputError(std::string("summary: ") + e.what());
  }
  return r;
}

}  // namespace aiet
