#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "aiet/errors.hpp"
#include "aiet/regularity.hpp"
#include "fixtures.hpp"

using namespace aiet;

TEST_CASE("regularity quantities at t = 0 are 1") {
  const RegularityRow row = regularity_row(fixtures::bf5(), 0.0);
  CHECK(row.dim_mu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(row.dim_nu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(row.holder_h == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(row.holder_hinv == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed-form rows") {
  const auto& model = fixtures::bf5();
  const double rho0 = std::log(fixtures::bf5_theta0());
  for (double t : {-2.5, -0.5, 0.75, 3.0}) {
    const RegularityRow row = regularity_row(model, t);
    const double rho = std::log(fixtures::bf5_slope_matrix(t).eigenvalues().cwiseAbs().maxCoeff());
    CHECK(row.rho == doctest::Approx(rho).epsilon(1e-12));
    CHECK(row.dim_mu == doctest::Approx(rho0 / (rho + 0.5 * t)).epsilon(1e-12));
    CHECK(row.dim_nu == doctest::Approx((rho - row.rho_prime * t) / rho0).epsilon(1e-12));
    // Extreme means are 0 and -1: for t >= 0 holder_h uses -1, for t < 0 it uses 0.
    if (t >= 0) {
      CHECK(row.holder_h == doctest::Approx(rho0 / (rho + t)).epsilon(1e-12));
      CHECK(row.holder_hinv == doctest::Approx(rho / rho0).epsilon(1e-12));
    } else {
      CHECK(row.holder_h == doctest::Approx(rho0 / rho).epsilon(1e-12));
      CHECK(row.holder_hinv == doctest::Approx((rho + t) / rho0).epsilon(1e-12));
    }
  }
}

TEST_CASE("limit constants") {
  const LimitConstants c = limit_constants(fixtures::bf5());
  const double rho0 = std::log(fixtures::bf5_theta0());
  CHECK_FALSE(c.degenerate);
  CHECK(c.phi_bar == 0);
  CHECK(c.phi_under == -1);
  CHECK(c.lim_holder_hinv_pos == doctest::Approx(std::log(3.0) / rho0).epsilon(1e-12));
  CHECK(c.lim_holder_hinv_neg == doctest::Approx(std::log(3.0) / rho0).epsilon(1e-12));
  CHECK(c.lim_t_holder_h_pos == doctest::Approx(rho0).epsilon(1e-12));
  CHECK(c.lim_t_holder_h_neg == doctest::Approx(rho0).epsilon(1e-12));
  CHECK(c.lim_t_dim_mu_pos == doctest::Approx(rho0 / 0.5).epsilon(1e-10));
  CHECK(c.lim_t_dim_mu_neg == doctest::Approx(rho0 / 0.5).epsilon(1e-10));
  CHECK(c.lim_t_holder_h_pos < c.lim_t_dim_mu_pos);
}

TEST_CASE("curves are ordered by the grid and independent of the thread count") {
  const auto grid = linear_grid(-3.0, 3.0, 25);
  CHECK(grid.front() == -3.0);
  CHECK(grid.back() == 3.0);
  CHECK(grid[12] == 0.0);
  const auto one = curve(fixtures::bf5(), grid, 1);
  const auto many = curve(fixtures::bf5(), grid, 4);
  REQUIRE(one.rows.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(one.rows[k].t == grid[k]);
    CHECK(one.rows[k].rho == many.rows[k].rho);
    CHECK(one.rows[k].holder_hinv == many.rows[k].holder_hinv);
  }
  CHECK(linear_grid(2.0, 2.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 3), InputError);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), InputError);
}

TEST_CASE("monotonicity and bound chains on the example") {
  const auto c = curve(fixtures::bf5(), linear_grid(-20.0, 20.0, 161));
  const auto report = monotonicity_report(c);
  CHECK(report.ok());
  CHECK(bound_chain_violations(c).empty());

  SUBCASE("a perturbed curve is flagged") {
    auto broken = c;
    const double step = c.rows[99].holder_h - c.rows[100].holder_h;
    broken.rows[100].holder_h += step + 1e-3;
    const auto bad = monotonicity_report(broken);
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.violations.front().quantity == "holder_h");
    CHECK(bad.worst == doctest::Approx(1e-3).epsilon(1e-6));
    broken.rows[10].dim_mu = 1.5;
    CHECK_FALSE(bound_chain_violations(broken).empty());
  }
}

TEST_CASE("constant potential gives constant curves") {
  auto job = validate(bf5_config());
  const auto flat = RegularityModel::build(job.system, {0, 0, 0, 0, 0});
  CHECK(flat.degenerate());
  const auto c = curve(flat, linear_grid(-5.0, 5.0, 21));
  CHECK(c.constants.degenerate);
  CHECK(std::isnan(c.constants.lim_t_holder_h_pos));
  for (const auto& row : c.rows) {
    CHECK(row.dim_mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.dim_nu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.holder_h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.holder_hinv == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(monotonicity_report(c).ok());
}

TEST_CASE("asymptote residuals shrink on a geometric grid") {
  const auto& model = fixtures::bf5();
  const double target = model.h_top_max / model.h_top;
  double previous = INFINITY;
  for (int j = 0; j <= 6; ++j) {
    const double residual = std::abs(regularity_row(model, std::ldexp(1.0, j)).holder_hinv - target);
    CHECK(residual < previous);
    previous = residual;
  }
}
