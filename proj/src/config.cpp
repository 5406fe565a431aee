#include "aiet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aiet/errors.hpp"

namespace aiet {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw InputError(field + ": " + what);
}

std::vector<std::string> string_list(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) field_error(field, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) field_error(where.empty() ? key : where + "." + key, "unknown field");
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  reject_unknown(j, {"alphabet", "pi_top", "pi_bottom", "rauzy_path", "omega", "t_grid", "empirical_depth", "output_dir"},
                 "");
  for (const char* required : {"alphabet", "pi_top", "pi_bottom", "rauzy_path", "omega", "t_grid"})
    if (!j.contains(required)) field_error(required, "missing");

  JobConfig c;
  c.alphabet = string_list(j["alphabet"], "alphabet");
  c.pi_top = string_list(j["pi_top"], "pi_top");
  c.pi_bottom = string_list(j["pi_bottom"], "pi_bottom");
  if (!j["rauzy_path"].is_string()) field_error("rauzy_path", "expected a string");
  c.rauzy_path = j["rauzy_path"].get<std::string>();
  c.omega = string_list(j["omega"], "omega");

  const json& grid = j["t_grid"];
  if (!grid.is_object()) field_error("t_grid", "expected an object");
  reject_unknown(grid, {"min", "max", "steps"}, "t_grid");
  for (const char* required : {"min", "max", "steps"})
    if (!grid.contains(required)) field_error(std::string("t_grid.") + required, "missing");
  c.t_grid.min = number(grid["min"], "t_grid.min");
  c.t_grid.max = number(grid["max"], "t_grid.max");
  c.t_grid.steps = integer(grid["steps"], "t_grid.steps");

  if (j.contains("empirical_depth")) c.empirical_depth = integer(j["empirical_depth"], "empirical_depth");
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) field_error("output_dir", "expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  } else {
    c.output_dir = "out";
  }

  std::set<std::string> distinct(c.alphabet.begin(), c.alphabet.end());
  if (c.alphabet.size() < 2) field_error("alphabet", "needs at least two symbols");
  if (distinct.size() != c.alphabet.size()) field_error("alphabet", "symbols must be distinct");
  if (c.omega.size() != c.alphabet.size()) field_error("omega", "length must equal the alphabet size");
  if (c.t_grid.steps < 1) field_error("t_grid.steps", "must be at least 1");
  if (!(c.t_grid.min <= c.t_grid.max)) field_error("t_grid", "min must not exceed max");
  if (c.empirical_depth < 0) field_error("empirical_depth", "must be non-negative");
  return c;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("config: cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const JobConfig& c) {
  json j;
  j["alphabet"] = c.alphabet;
  j["pi_top"] = c.pi_top;
  j["pi_bottom"] = c.pi_bottom;
  j["rauzy_path"] = c.rauzy_path;
  j["omega"] = c.omega;
  j["t_grid"] = {{"min", c.t_grid.min}, {"max", c.t_grid.max}, {"steps", c.t_grid.steps}};
  j["empirical_depth"] = c.empirical_depth;
  j["output_dir"] = c.output_dir.generic_string();
  return j.dump(2) + "\n";
}

ValidatedJob validate(const JobConfig& c) {
  Permutation perm;
  try {
    perm = Permutation::from_symbols(c.alphabet, c.pi_top, c.pi_bottom);
  } catch (const InputError& e) {
    field_error("pi_top/pi_bottom", e.what());
  }
  if (!perm.is_irreducible()) field_error("pi_top/pi_bottom", "permutation is reducible");
  RauzyPath path;
  try {
    path = RauzyPath::parse(c.rauzy_path);
  } catch (const InputError& e) {
    field_error("rauzy_path", e.what());
  }
  std::optional<SelfSimilarSystem> system;
  try {
    system = SelfSimilarSystem::build(perm, path);
  } catch (const InputError& e) {
    field_error("rauzy_path", e.what());
  }
  RationalVector omega;
  for (const auto& s : c.omega) {
    try {
      omega.push_back(parse_rational(s));
    } catch (const InputError& e) {
      field_error("omega", e.what());
    }
  }
  try {
    SlopeVector check(*system, omega);
  } catch (const InputError& e) {
    field_error("omega", e.what());
  }
  return {std::move(*system), std::move(omega)};
}

JobConfig bf5_config() {
  JobConfig c;
  c.alphabet = {"A", "B", "C", "D", "E"};
  c.pi_top = {"A", "B", "C", "D", "E"};
  c.pi_bottom = {"E", "D", "C", "B", "A"};
  c.rauzy_path = "ttbbtbtbbbtb";
  c.omega = {"-1", "-2", "-1", "2", "1"};
  c.t_grid = {-10.0, 10.0, 401};
  c.empirical_depth = 0;
  c.output_dir = "bf5_out";
  return c;
}

}  // namespace aiet
