#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "aiet/config.hpp"
#include "aiet/regularity.hpp"

namespace fixtures {

inline const aiet::RegularityModel& bf5() {
  static const aiet::RegularityModel model = [] {
    auto job = aiet::validate(aiet::bf5_config());
    return aiet::RegularityModel::build(std::move(job.system), std::move(job.omega));
  }();
  return model;
}

inline aiet::Permutation bf5_permutation() { return aiet::Permutation::symmetric({"A", "B", "C", "D", "E"}); }

inline aiet::IntMatrix bf5_matrix() {
  aiet::IntMatrix m(5, 5);
  m << 1, 1, 0, 0, 2,
       1, 2, 0, 0, 3,
       1, 0, 2, 0, 2,
       1, 0, 3, 2, 2,
       1, 0, 2, 1, 2;
  return m;
}

/// 2 + sqrt(3)/2 + sqrt(15 + 8 sqrt(3))/2
inline double bf5_theta0() { return 2.0 + std::sqrt(3.0) / 2.0 + 0.5 * std::sqrt(15.0 + 8.0 * std::sqrt(3.0)); }

/// Column (a, i) of the simplified transfer matrix: interval letter and the
/// exponent of e^t.
struct Column {
  const char* floor;
  const char* interval;
  int exponent;
};

inline const std::vector<Column>& bf5_columns() {
  static const std::vector<Column> columns = {
      {"A0", "A", 0},  {"A1", "E", -1}, {"A2", "B", 0},  {"A3", "E", -2}, {"B0", "A", 0},  {"B1", "E", -1},
      {"B2", "B", 0},  {"B3", "E", -2}, {"B4", "B", -1}, {"B5", "E", -3}, {"C0", "A", 0},  {"C1", "E", -1},
      {"C2", "C", 0},  {"C3", "C", -1}, {"C4", "E", -2}, {"D0", "A", 0},  {"D1", "E", -1}, {"D2", "C", 0},
      {"D3", "D", -1}, {"D4", "C", 1},  {"D5", "D", 0},  {"D6", "C", 2},  {"D7", "E", 1},  {"E0", "A", 0},
      {"E1", "E", -1}, {"E2", "C", 0},  {"E3", "D", -1}, {"E4", "C", 1},  {"E5", "E", 0},
  };
  return columns;
}

inline const std::vector<std::string>& bf5_sigma_max() {
  static const std::vector<std::string> v = {"A0", "A1", "A2", "B0", "B1", "B2", "C0", "C1",
                                             "C2", "D5", "D6", "D7", "E3", "E4", "E5"};
  return v;
}

inline const std::vector<std::vector<int>>& bf5_adjacency_max() {
  static const std::vector<std::vector<int>> a = {
      {1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0},
      {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1}, {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1},
      {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1},
  };
  return a;
}

inline const std::vector<std::string>& bf5_sigma_min() {
  static const std::vector<std::string> v = {"A2", "A3", "B4", "B5", "C3", "C4", "D0",
                                             "D1", "D2", "D3", "E0", "E1", "E2", "E3"};
  return v;
}

inline const std::vector<std::vector<int>>& bf5_adjacency_min() {
  static const std::vector<std::vector<int>> a = {
      {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0},
      {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1},
      {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0},
      {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0},
  };
  return a;
}

/// M(t omega) for the example, entry by entry.
inline aiet::Matrix<double> bf5_slope_matrix(double t) {
  auto e = [t](double k) { return std::exp(k * t); };
  aiet::Matrix<double> m(5, 5);
  m << 1, 1, 0, 0, e(-1) + e(-2),
       1, 1 + e(-1), 0, 0, e(-1) + e(-2) + e(-3),
       1, 0, 1 + e(-1), 0, e(-1) + e(-2),
       1, 0, e(2) + e(1) + 1, 1 + e(-1), e(1) + e(-1),
       1, 0, e(1) + 1, e(-1), 1 + e(-1);
  return m;
}

}  // namespace fixtures
