#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aiet/rational.hpp"
#include "aiet/self_similar.hpp"

namespace aiet {

struct GridSpec {
  double min = -10.0;
  double max = 10.0;
  int steps = 401;  ///< number of grid points
};

struct JobConfig {
  std::vector<std::string> alphabet;
  std::vector<std::string> pi_top;
  std::vector<std::string> pi_bottom;
  std::string rauzy_path;
  std::vector<std::string> omega;  ///< "p/q"
  GridSpec t_grid;
  int empirical_depth = 0;
  std::filesystem::path output_dir;
};

/// Parses and validates a JSON job. Throws InputError naming the offending
/// field; unknown fields are rejected.
JobConfig parse_config(const std::string& json_text);
JobConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const JobConfig& config);

/// The validated system and slope vector. Throws InputError prefixed with
/// the field responsible ("rauzy_path: path not closed").
struct ValidatedJob {
  SelfSimilarSystem system;
  RationalVector omega;
};
ValidatedJob validate(const JobConfig& config);

/// The five-letter hyperbolic example: symmetric permutation on A..E, path
/// ttbbtbtbbbtb, omega = (-1, -2, -1, 2, 1), t in [-10, 10] with 401 points.
JobConfig bf5_config();

}  // namespace aiet
