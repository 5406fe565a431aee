#include "aiet/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aiet/errors.hpp"

namespace aiet {

using nlohmann::json;

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const InputError&) {
    return exit_invalid_config;
  } catch (const InvariantError&) {
    return exit_mismatch;
  } catch (const OracleRefused&) {
    return exit_mismatch;
  } catch (const NumericError&) {
    return exit_numeric;
  } catch (...) {
    return exit_unexpected;
  }
}

int thread_budget() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("ARTIFACT_THREADS")) {
    int cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc() || ptr != end || cap < 1) throw InputError("ARTIFACT_THREADS: expected a positive integer");
    n = std::min(n, cap);
  }
  return n;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string curves_csv(const RegularityCurve& curve) {
  std::string out = "t,rho,rho_prime,dim_mu,dim_nu,holder_h,holder_hinv\n";
  for (const auto& r : curve.rows) {
    for (double v : {r.t, r.rho, r.rho_prime, r.dim_mu, r.dim_nu, r.holder_h}) {
      out += format_real(v);
      out += ',';
    }
    out += format_real(r.holder_hinv);
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

AnalysisResult analyze(const JobConfig& config, int threads) {
  ValidatedJob job = validate(config);
  RegularityModel model = RegularityModel::build(std::move(job.system), std::move(job.omega));
  const auto grid = linear_grid(config.t_grid.min, config.t_grid.max, config.t_grid.steps);
  RegularityCurve c = curve(model, grid, threads);
  SummaryRecord summary = make_summary(model, c.constants);
  return {std::move(model), std::move(c), std::move(summary), std::nullopt};
}

namespace {

void write_empirical(const std::filesystem::path& dir, AnalysisResult& result, int depth) {
  const auto path = dir / ("empirical_k" + std::to_string(depth) + ".csv");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << "x,hinv,cell_word\n";
    const TowerGraph& towers = result.model.towers;
    std::string line;
    auto visit = [&](const RefinementCell& cell, double cumulative) {
      line = format_real(cell.right);
      line += ',';
      line += format_real(cumulative);
      line += ',';
      line += cell_word(towers, cell.word);
      line += '\n';
      out << line;
    };
    result.empirical = empirical_conjugacy(result.model, empirical_t, {depth}, visit);
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

AnalysisResult run_analyze(const JobConfig& config, int threads) {
  AnalysisResult result = analyze(config, threads);
  std::filesystem::create_directories(config.output_dir);
  write_atomic(config.output_dir / "summary.json", to_json(result.summary));
  write_atomic(config.output_dir / "curves.csv", curves_csv(result.curve));
  if (config.empirical_depth > 0) write_empirical(config.output_dir, result, config.empirical_depth);
  return result;
}

const std::string& bf5_golden_json() {
  static const std::string text = R"golden({
  "M": [
    [1, 1, 0, 0, 2],
    [1, 2, 0, 0, 3],
    [1, 0, 2, 0, 2],
    [1, 0, 3, 2, 2],
    [1, 0, 2, 1, 2]
  ],
  "q": [4, 6, 5, 8, 6],
  "sigma": ["A0", "A1", "A2", "A3", "B0", "B1", "B2", "B3", "B4", "B5", "C0", "C1", "C2", "C3", "C4", "D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "E0", "E1", "E2", "E3", "E4", "E5"],
  "transfer_columns": {
    "A0": ["A", "0"],
    "A1": ["E", "-1"],
    "A2": ["B", "0"],
    "A3": ["E", "-2"],
    "B0": ["A", "0"],
    "B1": ["E", "-1"],
    "B2": ["B", "0"],
    "B3": ["E", "-2"],
    "B4": ["B", "-1"],
    "B5": ["E", "-3"],
    "C0": ["A", "0"],
    "C1": ["E", "-1"],
    "C2": ["C", "0"],
    "C3": ["C", "-1"],
    "C4": ["E", "-2"],
    "D0": ["A", "0"],
    "D1": ["E", "-1"],
    "D2": ["C", "0"],
    "D3": ["D", "-1"],
    "D4": ["C", "1"],
    "D5": ["D", "0"],
    "D6": ["C", "2"],
    "D7": ["E", "1"],
    "E0": ["A", "0"],
    "E1": ["E", "-1"],
    "E2": ["C", "0"],
    "E3": ["D", "-1"],
    "E4": ["C", "1"],
    "E5": ["E", "0"]
  },
  "phi_bar": "0",
  "phi_under": "-1",
  "sigma_max": ["A0", "A1", "A2", "B0", "B1", "B2", "C0", "C1", "C2", "D5", "D6", "D7", "E3", "E4", "E5"],
  "adjacency_max": [
    [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1]
  ],
  "sigma_min": ["A2", "A3", "B4", "B5", "C3", "C4", "D0", "D1", "D2", "D3", "E0", "E1", "E2", "E3"],
  "adjacency_min": [
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0]
  ],
  "theta0": 5.551933372263209,
  "h_top_ratio": 0.6409093193297306,
  "lambda_t1": [0.25862, 0.103498, 0.41543, 0.028547, 0.193905]
})golden";
  return text;
}

double symmetry_residual(const RegularityCurve& curve) {
  const auto& rows = curve.rows;
  double worst = 0;
  for (std::size_t k = 0, n = rows.size(); k < n; ++k) {
    const RegularityRow& a = rows[k];
    const RegularityRow& b = rows[n - 1 - k];
    if (std::abs(a.t + b.t) > 1e-9) throw InputError("t_grid: not symmetric about 0");
    for (double d : {a.dim_mu - b.dim_mu, a.dim_nu - b.dim_nu, a.holder_h - b.holder_h,
                     a.holder_hinv - b.holder_hinv})
      worst = std::max(worst, std::abs(d));
  }
  return worst;
}

GoldenCheck compare_golden(const AnalysisResult& result, const std::string& golden_json) {
  json g;
  try {
    g = json::parse(golden_json);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("golden: malformed JSON: ") + e.what());
  }
  const RegularityModel& model = result.model;
  const TowerGraph& towers = model.towers;
  const SummaryRecord& s = result.summary;
  GoldenCheck check;
  auto fail = [&](const std::string& field, const std::string& detail) {
    if (check.ok) {
      check.ok = false;
      check.first_mismatch = field;
      check.detail = detail;
    }
  };
  auto need = [&](const char* field) -> const json& {
    if (!g.contains(field)) throw InputError(std::string("golden: missing field ") + field);
    return g.at(field);
  };
  auto close = [&](const char* field, double computed, double expected, double tol) {
    if (!(std::abs(computed - expected) <= tol))
      fail(field, "computed " + format_real(computed) + ", expected " + format_real(expected));
  };

  try {
    if (need("M").get<std::vector<std::vector<long long>>>() != s.M) fail("M", "self-similarity matrix differs");
    if (need("q").get<std::vector<int>>() != s.q) fail("q", "tower heights differ");
    std::vector<std::string> labels;
    for (Vertex v = 0; v < towers.vertex_count(); ++v) labels.push_back(towers.label(v));
    if (need("sigma").get<std::vector<std::string>>() != labels) fail("sigma", "extended alphabet differs");
    const json& table = need("transfer_columns");
    if (table.size() != labels.size()) fail("transfer_columns", "column count differs");
    for (Vertex v = 0; v < towers.vertex_count() && check.ok; ++v) {
      const std::string label = towers.label(v);
      if (!table.contains(label)) {
        fail("transfer_columns." + label, "column missing");
        break;
      }
      const auto cell = table.at(label).get<std::vector<std::string>>();
      const std::string interval = model.system.permutation.symbol(towers.interval_of(v));
      if (cell.size() != 2 || cell[0] != interval || parse_rational(cell[1]) != towers.birkhoff(v))
        fail("transfer_columns." + label, "computed (" + interval + ", " + to_string(towers.birkhoff(v)) + ")");
    }
    if (need("phi_bar").get<std::string>() != s.phi_bar) fail("phi_bar", "computed " + s.phi_bar);
    if (need("phi_under").get<std::string>() != s.phi_under) fail("phi_under", "computed " + s.phi_under);
    if (need("sigma_max").get<std::vector<std::string>>() != s.sigma_max) fail("sigma_max", "vertex set differs");
    if (need("adjacency_max").get<std::vector<std::vector<int>>>() != s.adjacency_max)
      fail("adjacency_max", "adjacency differs");
    if (need("sigma_min").get<std::vector<std::string>>() != s.sigma_min) fail("sigma_min", "vertex set differs");
    if (need("adjacency_min").get<std::vector<std::vector<int>>>() != s.adjacency_min)
      fail("adjacency_min", "adjacency differs");
    close("theta0", model.system.theta0, need("theta0").get<double>(), 1e-9);
    close("h_top_ratio", model.h_top_max / model.h_top, need("h_top_ratio").get<double>(), 1e-9);
    const auto lambda = need("lambda_t1").get<std::vector<double>>();
    const auto pf = pf_left_right(towers.slope_matrix(1.0));
    const Vector<double> lengths = pf.left / pf.left.sum();
    if (static_cast<int>(lambda.size()) != lengths.size()) fail("lambda_t1", "dimension differs");
    for (int a = 0; a < lengths.size() && check.ok; ++a) close("lambda_t1", lengths(a), lambda[a], 1e-5);
  } catch (const json::exception& e) {
    throw InputError(std::string("golden: ") + e.what());
  }

  check.symmetry_residual = symmetry_residual(result.curve);
  if (check.symmetry_residual > 1e-6) fail("symmetry", "residual " + format_real(check.symmetry_residual));
  return check;
}

AnalysisResult run_example_bf5(const std::filesystem::path& out_dir, int threads,
                               const std::optional<std::filesystem::path>& golden_path) {
  JobConfig config = bf5_config();
  config.output_dir = out_dir;
  std::string golden = bf5_golden_json();
  if (golden_path) {
    std::ifstream in(*golden_path, std::ios::binary);
    if (!in) throw InputError("golden: cannot read " + golden_path->string());
    std::ostringstream text;
    text << in.rdbuf();
    golden = text.str();
  }
  AnalysisResult result = run_analyze(config, threads);
  const GoldenCheck check = compare_golden(result, golden);
  if (!check.ok) throw InvariantError("golden mismatch in " + check.first_mismatch + ": " + check.detail);
  return result;
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::to_json() const {
  json j;
  j["skipped"] = skipped;
  if (skipped) j["skip_reason"] = skip_reason;
  j["passed"] = passed();
  j["suites"] = json::array();
  for (const auto& s : suites)
    j["suites"].push_back({{"name", s.name},
                           {"passed", s.passed},
                           {"magnitude", round15(s.magnitude)},
                           {"tolerance", s.tolerance},
                           {"detail", s.detail}});
  return j.dump(2) + "\n";
}

namespace {

SuiteResult suite(std::string name, double magnitude, double tolerance, std::string detail = {}) {
  return {std::move(name), magnitude <= tolerance, magnitude, tolerance, std::move(detail)};
}

double gibbs_consistency(const RegularityModel& model, double t) {
  const Digraph& g = model.towers.graph();
  const TransferData data = transfer(g, model.phi, t, model.thermo);
  double worst = 0;
  std::vector<std::vector<Vertex>> words;
  double total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    words.push_back({v});
    total += gibbs_cylinder(data, words.back());
  }
  worst = std::abs(total - 1.0);
  for (int k = 0; k < 3; ++k) {
    std::vector<std::vector<Vertex>> longer;
    for (const auto& w : words) {
      const double mass = gibbs_cylinder(data, w);
      double sum = 0;
      for (EdgeId e : g.out_edges(w.back())) {
        auto x = w;
        x.push_back(g.edge(e).target);
        sum += gibbs_cylinder(data, x);
        longer.push_back(std::move(x));
      }
      worst = std::max(worst, std::abs(sum - mass));
    }
    words = std::move(longer);
  }
  return worst;
}

double cohomology_cycles(const RegularityModel& model, double t, int cycles, std::mt19937_64& rng) {
  const Digraph& g = model.towers.graph();
  const double rho = model.rho(t);
  const Vector<double> theta = theta_potential(model.towers, conformal_interval_masses(model.towers, t, rho));
  double worst = 0;
  for (int c = 0; c < cycles; ++c) {
    std::vector<int> seen(g.vertex_count(), -1);
    std::vector<EdgeId> walk;
    Vertex v = static_cast<Vertex>(rng() % g.vertex_count());
    while (seen[v] < 0) {
      seen[v] = static_cast<int>(walk.size());
      const auto& out = g.out_edges(v);
      const EdgeId e = out[rng() % out.size()];
      walk.push_back(e);
      v = g.edge(e).target;
    }
    double lhs = 0, phi_sum = 0;
    const std::size_t start = seen[v];
    for (std::size_t k = start; k < walk.size(); ++k) {
      lhs += theta(walk[k]);
      phi_sum += model.phi(walk[k]);
    }
    const double rhs = static_cast<double>(walk.size() - start) * rho - t * phi_sum;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double factorization_residual(const RegularityModel& model, double t) {
  const auto [e, d] = factorization(model.towers, t);
  ThermoOptions raw = model.thermo;
  raw.conditioning = Conditioning::never;
  const TransferData data = transfer(model.towers.graph(), model.phi, t, raw);
  const Matrix<double> ed = e * d;
  const Matrix<double> de = d * e;
  const Matrix<double> mt = model.towers.slope_matrix(t).transpose();
  double worst = 0;
  for (int i = 0; i < ed.rows(); ++i)
    for (int j = 0; j < ed.cols(); ++j)
      worst = std::max(worst, std::abs(ed(i, j) - data.matrix(i, j)) / std::max(1.0, std::abs(data.matrix(i, j))));
  for (int i = 0; i < de.rows(); ++i)
    for (int j = 0; j < de.cols(); ++j)
      worst = std::max(worst, std::abs(de(i, j) - mt(i, j)) / std::max(1.0, std::abs(mt(i, j))));
  return worst;
}

}  // namespace

VerifyReport run_verify(const JobConfig& config, int threads) {
  VerifyReport report;
  ValidatedJob job = validate(config);
  if (job.system.spectrum.type != SpectralType::hyperbolic_periodic) {
    report.skipped = true;
    report.skip_reason = std::string("spectral type is ") + to_string(job.system.spectrum.type);
    return report;
  }
  const RenormalizationReport rv = numeric_rv_consistency(job.system);
  report.suites.push_back(
      {"renormalization", rv.ok, rv.max_length_deviation, 1e-8, rv.ok ? rv.realized_types : rv.message});

  RegularityModel model = RegularityModel::build(std::move(job.system), std::move(job.omega));
  const auto grid = linear_grid(config.t_grid.min, config.t_grid.max, config.t_grid.steps);
  const RegularityCurve c = curve(model, grid, threads);

  double gibbs = 0;
  for (double t : {-1.0, 0.0, 1.0}) gibbs = std::max(gibbs, gibbs_consistency(model, t));
  report.suites.push_back(suite("gibbs_consistency", gibbs, 1e-12, "cylinders up to length 4 at t = -1, 0, 1"));

  double fd = 0;
  for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double h = 1e-4;
    const double numeric = (model.rho(t + h) - model.rho(t - h)) / (2 * h);
    fd = std::max(fd, std::abs(model.rho_prime(t) - numeric));
  }
  report.suites.push_back(suite("derivative_vs_fd", fd, 1e-6, "central difference, step 1e-4, t = -2..2"));

  std::mt19937_64 rng(20260101);
  report.suites.push_back(suite("cohomology_cycle_sums", cohomology_cycles(model, 1.0, 200, rng), 1e-9,
                                "200 random cycles at t = 1"));

  {
    SuiteResult s{"oracle_vs_critical_graph", true, 0, 0, ""};
    s.detail = (model.maximizing.verified && model.minimizing.verified)
                   ? "both critical subgraphs match cycle enumeration"
                   : "cycle enumeration refused; critical subgraphs unverified";
    report.suites.push_back(s);
  }

  double two_route = 0;
  for (const auto& row : c.rows)
    two_route = std::max(two_route, std::abs(pf_left_right(model.towers.slope_matrix(row.t)).log_eigenvalue - row.rho));
  double fact = 0;
  for (double t : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) fact = std::max(fact, factorization_residual(model, t));
  report.suites.push_back(suite("two_route_rho", two_route, 1e-10, "log PF of M(t omega) against the transfer matrix"));
  report.suites.push_back(suite("factorization", fact, 1e-12, "E D and D E against the assembled matrices"));

  const MonotonicityReport mono = monotonicity_report(c);
  {
    SuiteResult s = suite("monotonicity", mono.worst, 1e-10);
    s.passed = mono.ok();
    if (!mono.ok())
      s.detail = mono.violations.front().quantity + " at t = " + format_real(mono.violations.front().t);
    report.suites.push_back(s);
  }
  const auto chain = bound_chain_violations(c);
  {
    double worst = 0;
    for (const auto& v : chain) worst = std::max(worst, v.magnitude);
    SuiteResult s = suite("bound_chains", worst, 1e-12);
    s.passed = chain.empty();
    if (!chain.empty()) s.detail = chain.front().quantity + " at t = " + format_real(chain.front().t);
    report.suites.push_back(s);
  }
  double concavity = 0;
  for (std::size_t k = 1; k + 1 < c.rows.size(); ++k)
    concavity = std::max(concavity, -(c.rows[k + 1].rho - 2 * c.rows[k].rho + c.rows[k - 1].rho));
  report.suites.push_back(suite("convexity", concavity, 1e-9, "second differences of rho on the grid"));
  return report;
}

}  // namespace aiet
