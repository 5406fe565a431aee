#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aiet/empirical.hpp"
#include "aiet/perron.hpp"
#include "fixtures.hpp"

using namespace aiet;

namespace {

// Direct iteration of the exchange x -> x - top_left(a) + bottom_left(a).
double exchange(const Permutation& p, const Vector<double>& lambda, double x, Letter* visited) {
  double top = 0;
  for (Letter a : p.top_row()) {
    if (x < top + lambda(a)) {
      double bottom = 0;
      for (Letter b : p.bottom_row()) {
        if (b == a) break;
        bottom += lambda(b);
      }
      *visited = a;
      return x - top + bottom;
    }
    top += lambda(a);
  }
  *visited = -1;
  return x;
}

}  // namespace

TEST_CASE("level-one cells are the simulated tower floors") {
  const auto& model = fixtures::bf5();
  const auto& towers = model.towers;
  const LevelOneGeometry geo = level_one_geometry(model);
  const Permutation& p = model.system.permutation;
  const double shrink = 1.0 / model.system.theta0;
  double base = 0;
  for (Letter a : p.top_row()) {
    double x = base + 0.5 * shrink * model.system.lambda(a);
    for (int i = 0; i < towers.words().heights[a]; ++i) {
      const Vertex v = towers.vertex(Floor{a, i});
      CHECK(x > geo.left(v));
      CHECK(x < geo.left(v) + geo.length(v));
      CHECK(std::abs(x - (geo.left(v) + geo.length(v) / 2)) < 1e-12);
      Letter visited = -1;
      x = exchange(p, model.system.lambda, x, &visited);
      CHECK(visited == towers.interval_of(v));
    }
    // After q steps the orbit returns to the renormalized interval.
    CHECK(x < shrink);
    base += shrink * model.system.lambda(a);
  }
}

TEST_CASE("depth-one masses are the conformal floor masses") {
  const auto& model = fixtures::bf5();
  for (double t : {-2.0, 0.0, 1.0, 3.5}) {
    const double rho = pf_left_right(model.towers.slope_matrix(t)).log_eigenvalue;
    const IntervalMasses masses = conformal_interval_masses(model.towers, t, rho);
    const LevelOneGeometry geo = level_one_geometry(model);
    std::vector<RefinementCell> cells;
    const auto result = empirical_conjugacy(model, t, {1}, [&](const RefinementCell& c, double) { cells.push_back(c); });
    REQUIRE(cells.size() == 29);
    CHECK(result.cell_count == 29);
    for (const auto& c : cells) {
      REQUIRE(c.word.size() == 1);
      CHECK(c.nu_mass == doctest::Approx(masses.floors(c.word[0])).epsilon(1e-12));
      CHECK(c.left == doctest::Approx(geo.left(c.word[0])).epsilon(1e-14));
      CHECK(c.leb_length == doctest::Approx(geo.length(c.word[0])).epsilon(1e-14));
    }
  }
}

TEST_CASE("refinement cells tile the interval with the prescribed masses") {
  const auto& model = fixtures::bf5();
  const double t = 0.8;
  const double rho = pf_left_right(model.towers.slope_matrix(t)).log_eigenvalue;
  const IntervalMasses masses = conformal_interval_masses(model.towers, t, rho);
  const LevelOneGeometry geo = level_one_geometry(model);
  double previous_right = 0, previous_cumulative = 0, worst_mass = 0, worst_length = 0;
  std::uint64_t count = 0;
  const auto result = empirical_conjugacy(model, t, {4}, [&](const RefinementCell& c, double cumulative) {
    ++count;
    CHECK(std::abs(c.left - previous_right) < 1e-12);
    CHECK(cumulative > previous_cumulative);
    previous_right = c.right;
    previous_cumulative = cumulative;
    const int k = static_cast<int>(c.word.size()) - 1;
    double exponent = 0;
    for (Vertex x : c.word) exponent += t * to_double(model.towers.birkhoff(x));
    const Letter last = model.towers.floor(c.word.back()).letter;
    const double mass = std::exp(-(k + 1) * rho + exponent) * masses.intervals(last);
    const double length = std::exp(-k * model.system.rho0) * geo.length(c.word.back());
    worst_mass = std::max(worst_mass, std::abs(c.nu_mass - mass) / mass);
    worst_length = std::max(worst_length, std::abs(c.leb_length - length) / length);
    for (std::size_t m = 1; m < c.word.size(); ++m)
      CHECK(model.towers.graph().find_edge(c.word[m - 1], c.word[m]) >= 0);
  });
  CHECK(count == result.cell_count);
  CHECK(static_cast<double>(count) == refinement_cell_count(model.towers.graph(), 4));
  CHECK(worst_mass < 1e-10);
  CHECK(worst_length < 1e-10);
  CHECK(std::abs(result.nu_total - 1.0) < 1e-9);
  CHECK(std::abs(result.leb_total - 1.0) < 1e-9);
  CHECK(std::abs(previous_right - 1.0) < 1e-9);
}

TEST_CASE("estimates are exact at t = 0") {
  for (int depth : {1, 3, 6}) {
    const auto r = empirical_conjugacy(fixtures::bf5(), 0.0, {depth});
    CHECK(std::abs(r.est_holder_h - 1.0) < 1e-9);
    CHECK(std::abs(r.est_holder_hinv - 1.0) < 1e-9);
  }
}

TEST_CASE("oversized refinements are refused with a smaller depth") {
  EmpiricalOptions options;
  options.depth = 8;
  options.max_cells = 100000;
  try {
    empirical_conjugacy(fixtures::bf5(), 1.0, options);
    FAIL("expected a refusal");
  } catch (const RefinementTooLarge& e) {
    CHECK(e.suggested_depth == 5);
    CHECK(refinement_cell_count(fixtures::bf5().towers.graph(), e.suggested_depth) <= 100000);
    CHECK(std::string(e.what()).find("try depth 5") != std::string::npos);
  }
  CHECK_THROWS_AS(empirical_conjugacy(fixtures::bf5(), 1.0, {0}), InputError);
}

TEST_CASE("cell words") {
  const auto& towers = fixtures::bf5().towers;
  CHECK(cell_word(towers, {towers.vertex("A0"), towers.vertex("E3")}) == "A0.E3");
}
