#include "aiet/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace aiet {

namespace {

Vector<double> row_left_endpoints(const std::vector<Letter>& row, const Vector<double>& lengths) {
  Vector<double> left(lengths.size());
  double x = 0;
  for (Letter a : row) {
    left(a) = x;
    x += lengths(a);
  }
  return left;
}

Letter locate(const std::vector<Letter>& top_row, const Vector<double>& top_left, const Vector<double>& lengths,
              double x) {
  for (Letter a : top_row)
    if (x >= top_left(a) && x < top_left(a) + lengths(a)) return a;
  return -1;
}

}  // namespace

LevelOneGeometry level_one_geometry(const RegularityModel& model) {
  const Permutation& perm = model.system.permutation;
  const TowerGraph& towers = model.towers;
  const Vector<double>& lambda = model.system.lambda;
  LevelOneGeometry geo;
  geo.contraction = std::exp(-model.system.rho0);
  geo.top_left = row_left_endpoints(perm.top_row(), lambda);
  const Vector<double> bottom_left = row_left_endpoints(perm.bottom_row(), lambda);

  const int n = towers.vertex_count();
  geo.left.resize(n);
  geo.length.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    const Floor f = towers.floor(v);
    geo.length(v) = geo.contraction * lambda(f.letter);
    if (f.level == 0) geo.left(v) = geo.contraction * geo.top_left(f.letter);
  }
  for (Letter a = 0; a < towers.alphabet_size(); ++a) {
    Vertex v = towers.vertex(Floor{a, 0});
    const int height = towers.words().heights[a];
    for (int i = 0; i < height; ++i, ++v) {
      const double mid = geo.left(v) + geo.length(v) / 2;
      const Letter b = locate(perm.top_row(), geo.top_left, lambda, mid);
      if (b != towers.interval_of(v) || geo.left(v) < geo.top_left(b) - 1e-12 ||
          geo.left(v) + geo.length(v) > geo.top_left(b) + lambda(b) + 1e-12) {
        std::ostringstream os;
        os << "simulated orbit leaves interval " << perm.symbol(towers.interval_of(v)) << " at floor "
           << towers.label(v);
        throw InvariantError(os.str());
      }
      if (i + 1 < height) geo.left(v + 1) = geo.left(v) - geo.top_left(b) + bottom_left(b);
    }
  }

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return geo.left(a) < geo.left(b); });
  double x = 0;
  for (Vertex v : order) {
    if (std::abs(geo.left(v) - x) > 1e-9)
      throw InvariantError("tower floors do not tile the interval near " + towers.label(v));
    x = geo.left(v) + geo.length(v);
  }
  if (std::abs(x - 1.0) > 1e-9) throw InvariantError("tower floors do not cover the interval");
  return geo;
}

RefinementTooLarge::RefinementTooLarge(double cells_, std::uint64_t cap, int suggested)
    : InputError("refinement needs " + std::to_string(static_cast<std::uint64_t>(cells_)) + " cells, cap is " +
                 std::to_string(cap) + "; try depth " + std::to_string(suggested)),
      cells(cells_),
      suggested_depth(suggested) {}

double refinement_cell_count(const Digraph& graph, int depth) {
  if (depth < 1) throw InputError("refinement depth must be at least 1");
  std::vector<double> paths(graph.vertex_count(), 1.0);
  for (int k = 1; k < depth; ++k) {
    std::vector<double> next(graph.vertex_count(), 0.0);
    for (const Edge& e : graph.edges()) next[e.source] += paths[e.target];
    paths = std::move(next);
  }
  return std::accumulate(paths.begin(), paths.end(), 0.0);
}

std::string cell_word(const TowerGraph& towers, const std::vector<Vertex>& word) {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += '.';
    out += towers.label(word[k]);
  }
  return out;
}

namespace {

struct Refiner {
  const RegularityModel& model;
  const LevelOneGeometry& geo;
  const Vector<double>& weight;     ///< exp(t phi_x - rho) per vertex
  const Vector<double>& intervals;  ///< nu(I_a)
  const std::vector<std::vector<Vertex>>& children;
  const CellVisitor& visit;
  int depth;
  EmpiricalResult result{};
  RefinementCell cell{};
  double cumulative = 0;
  double previous_right = 0;

  // Affine map y -> scale * y + offset accumulated along the prefix; factor
  // is the product of the vertex weights.
  void descend(Vertex x, double scale, double offset, double factor) {
    cell.word.push_back(x);
    const Floor f = model.towers.floor(x);
    const double w = factor * weight(x);
    if (static_cast<int>(cell.word.size()) == depth) {
      cell.left = scale * geo.left(x) + offset;
      cell.leb_length = scale * geo.length(x);
      cell.right = cell.left + cell.leb_length;
      cell.nu_mass = w * intervals(f.letter);
      emit();
    } else {
      const double s = scale * geo.contraction;
      const double o = scale * (geo.left(x) - geo.contraction * geo.top_left(f.letter)) + offset;
      for (Vertex y : children[x]) descend(y, s, o, w);
    }
    cell.word.pop_back();
  }

  void emit() {
    ++result.cell_count;
    result.max_gap = std::max(result.max_gap, std::abs(cell.left - previous_right));
    previous_right = cell.right;
    cumulative += cell.nu_mass;
    result.leb_total += cell.leb_length;
    const double log_nu = std::log(cell.nu_mass);
    const double log_leb = std::log(cell.leb_length);
    result.est_holder_hinv = std::min(result.est_holder_hinv, log_nu / log_leb);
    result.est_holder_h = std::min(result.est_holder_h, log_leb / log_nu);
    if (visit) visit(cell, cumulative);
  }
};

}  // namespace

EmpiricalResult empirical_conjugacy(const RegularityModel& model, double t, const EmpiricalOptions& options,
                                    const CellVisitor& visit) {
  const TowerGraph& towers = model.towers;
  const Digraph& g = towers.graph();
  const double cells = refinement_cell_count(g, options.depth);
  if (cells > static_cast<double>(options.max_cells)) {
    int k = options.depth;
    while (k > 1 && refinement_cell_count(g, k) > static_cast<double>(options.max_cells)) --k;
    throw RefinementTooLarge(cells, options.max_cells, k);
  }

  const Matrix<double> slope = towers.slope_matrix(t);
  const auto pf = pf_left_right(slope, model.thermo.power);
  const IntervalMasses masses = conformal_interval_masses(towers, t, pf.log_eigenvalue);
  const LevelOneGeometry geo = level_one_geometry(model);

  Vector<double> weight(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    weight(v) = std::exp(t * to_double(towers.birkhoff(v)) - masses.rho);

  std::vector<Vertex> roots(g.vertex_count());
  std::iota(roots.begin(), roots.end(), 0);
  auto by_position = [&](Vertex a, Vertex b) { return geo.left(a) < geo.left(b); };
  std::sort(roots.begin(), roots.end(), by_position);
  std::vector<std::vector<Vertex>> children(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (EdgeId e : g.out_edges(v)) children[v].push_back(g.edge(e).target);
    std::sort(children[v].begin(), children[v].end(), by_position);
  }

  Refiner refiner{model, geo, weight, masses.intervals, children, visit, options.depth};
  refiner.result.depth = options.depth;
  refiner.result.t = t;
  refiner.result.est_holder_h = refiner.result.est_holder_hinv = std::numeric_limits<double>::infinity();
  refiner.cell.word.reserve(options.depth);
  for (Vertex x : roots) refiner.descend(x, 1.0, 0.0, 1.0);
  EmpiricalResult result = refiner.result;
  result.nu_total = refiner.cumulative;
  result.max_gap = std::max(result.max_gap, std::abs(refiner.previous_right - 1.0));

  if (std::abs(result.nu_total - 1.0) > 1e-9 || std::abs(result.leb_total - 1.0) > 1e-9 || result.max_gap > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "depth-" << options.depth << " cells do not partition the interval: nu total " << result.nu_total
       << ", length total " << result.leb_total << ", max gap " << result.max_gap;
    throw InvariantError(os.str());
  }
  return result;
}

}  // namespace aiet
