#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "aiet/errors.hpp"
#include "aiet/pipeline.hpp"
#include "fixtures.hpp"

using namespace aiet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(AIET_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(AIET_CLI) + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string bf5_json(const fs::path& out, int steps = 41) {
  JobConfig c = bf5_config();
  c.output_dir = out;
  c.t_grid = {-2.0, 2.0, steps};
  return config_to_json(c);
}

}  // namespace

TEST_CASE("config parsing names the offending field") {
  const std::string good = bf5_json("x");
  const JobConfig c = parse_config(good);
  CHECK(c.alphabet.size() == 5);
  CHECK(c.rauzy_path == "ttbbtbtbbbtb");
  CHECK(c.t_grid.steps == 41);
  CHECK(parse_config(config_to_json(c)).omega == c.omega);

  auto error_of = [](const std::string& text) {
    try {
      validate(parse_config(text));
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  auto edit = [&](const std::function<void(nlohmann::json&)>& f) {
    auto j = nlohmann::json::parse(good);
    f(j);
    return j.dump();
  };
  CHECK(error_of(edit([](auto& j) { j["rauzy_path"] = "t"; })).starts_with("rauzy_path"));
  CHECK(error_of(edit([](auto& j) { j["rauzy_path"] = "tq"; })).starts_with("rauzy_path"));
  CHECK(error_of(edit([](auto& j) { j["omega"] = {"1", "0", "0", "0", "0"}; })).starts_with("omega"));
  CHECK(error_of(edit([](auto& j) { j["omega"] = {"1", "0"}; })).starts_with("omega"));
  CHECK(error_of(edit([](auto& j) { j["omega"][0] = "1/0"; })).starts_with("omega"));
  CHECK(error_of(edit([](auto& j) { j["alphabet"][1] = "A"; })).starts_with("alphabet"));
  CHECK(error_of(edit([](auto& j) { j["t_grid"]["steps"] = 0; })).starts_with("t_grid.steps"));
  CHECK(error_of(edit([](auto& j) { j["t_grid"]["min"] = 5; })).starts_with("t_grid"));
  CHECK(error_of(edit([](auto& j) { j["colour"] = "blue"; })).starts_with("colour"));
  CHECK(error_of(edit([](auto& j) { j["t_grid"]["step"] = 1; })).starts_with("t_grid.step"));
  CHECK(error_of(edit([](auto& j) { j.erase("pi_top"); })).starts_with("pi_top"));
  CHECK(error_of(edit([](auto& j) { j["pi_bottom"] = {"A", "B", "C", "D", "E"}; })).starts_with("pi_top/pi_bottom"));
  CHECK(error_of("{").starts_with("config"));
}

TEST_CASE("summary round-trips and rejects unknown fields") {
  const auto& model = fixtures::bf5();
  const SummaryRecord s = make_summary(model, limit_constants(model));
  CHECK(s.phi_bar == "0");
  CHECK(s.phi_under == "-1");
  CHECK(s.sigma_size == 29);
  CHECK(s.h_top_max / s.h_top_X == doctest::Approx(0.6409).epsilon(1e-4));
  const std::string text = to_json(s);
  CHECK(summary_from_json(text) == s);
  CHECK(to_json(summary_from_json(text)) == text);

  auto j = nlohmann::json::parse(text);
  j["extra"] = 1;
  CHECK_THROWS_AS(summary_from_json(j.dump()), InputError);
  j.erase("extra");
  j["limits"]["bogus"] = 2;
  CHECK_THROWS_AS(summary_from_json(j.dump()), InputError);
  j = nlohmann::json::parse(text);
  j.erase("theta0");
  CHECK_THROWS_AS(summary_from_json(j.dump()), InputError);
  CHECK(round15(0.12345678901234567) == 0.123456789012346);
}

TEST_CASE("real formatting is shortest round-trip") {
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-0.05) == "-0.05");
  CHECK(format_real(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(format_real(M_PI)) == M_PI);
}

TEST_CASE("analyze writes deterministic outputs for any thread count") {
  const fs::path dir = scratch("analyze");
  auto config = parse_config(bf5_json(dir / "a"));
  config.empirical_depth = 3;
  write_file(dir / "a.json", config_to_json(config));
  config.output_dir = dir / "b";
  write_file(dir / "b.json", config_to_json(config));
  REQUIRE(run_cli("analyze --config '" + (dir / "a.json").string() + "'", "ARTIFACT_THREADS=1") == 0);
  REQUIRE(run_cli("analyze --config '" + (dir / "b.json").string() + "'", "ARTIFACT_THREADS=4") == 0);
  for (const char* file : {"summary.json", "curves.csv", "empirical_k3.csv"}) {
    CAPTURE(file);
    const std::string a = read_file(dir / "a" / file);
    CHECK(!a.empty());
    CHECK(a == read_file(dir / "b" / file));
    CHECK(a.find('\r') == std::string::npos);
  }
  const std::string curves = read_file(dir / "a" / "curves.csv");
  CHECK(curves.starts_with("t,rho,rho_prime,dim_mu,dim_nu,holder_h,holder_hinv\n"));
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 42);
  CHECK(curves.find("\n0,1.7141462224594") != std::string::npos);
  const std::string empirical = read_file(dir / "a" / "empirical_k3.csv");
  CHECK(empirical.starts_with("x,hinv,cell_word\n"));
  CHECK(std::count(empirical.begin(), empirical.end(), '\n') == 910);
  const auto summary = summary_from_json(read_file(dir / "a" / "summary.json"));
  CHECK(summary.phi_bar == "0");
  CHECK_FALSE(fs::exists(dir / "a" / "summary.json.tmp"));
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  auto j = nlohmann::json::parse(bf5_json(dir / "out"));
  j["rauzy_path"] = "t";
  write_file(dir / "open.json", j.dump());
  CHECK(run_cli("analyze --config '" + (dir / "open.json").string() + "'") == 2);
  CHECK(run_cli("analyze --config '" + (dir / "missing.json").string() + "'") == 2);
  CHECK(run_cli("analyze") == 2);
  CHECK(run_cli("example bf7") == 2);
  CHECK(run_cli("analyze --config '" + (dir / "open.json").string() + "'", "ARTIFACT_THREADS=zero") == 2);

  j = nlohmann::json::parse(bf5_json(dir / "deep"));
  j["empirical_depth"] = 14;
  write_file(dir / "deep.json", j.dump());
  CHECK(run_cli("analyze --config '" + (dir / "deep.json").string() + "'") == 2);

  SUBCASE("example and golden data") {
    CHECK(run_cli("example bf5 --out '" + (dir / "bf5").string() + "'") == 0);
    const std::string curves = read_file(dir / "bf5" / "curves.csv");
    CHECK(std::count(curves.begin(), curves.end(), '\n') == 402);
    CHECK(curves.find("\n0,1.7141462224594415,-0.5000000000000012,1,1,1,1\n") != std::string::npos);

    auto golden = nlohmann::json::parse(bf5_golden_json());
    golden["adjacency_min"][3][2] = 0;
    write_file(dir / "corrupt.json", golden.dump());
    CHECK(run_cli("example bf5 --out '" + (dir / "bf5c").string() + "' --golden '" + (dir / "corrupt.json").string() +
                  "'") == 3);

    AnalysisResult result = analyze(bf5_config(), 2);
    const GoldenCheck check = compare_golden(result, golden.dump());
    CHECK_FALSE(check.ok);
    CHECK(check.first_mismatch == "adjacency_min");
    golden = nlohmann::json::parse(bf5_golden_json());
    golden["transfer_columns"]["D6"][1] = "1";
    CHECK(compare_golden(result, golden.dump()).first_mismatch == "transfer_columns.D6");
    CHECK(compare_golden(result, bf5_golden_json()).ok);
    CHECK(compare_golden(result, bf5_golden_json()).symmetry_residual < 1e-12);
  }
}

TEST_CASE("verify suites") {
  const fs::path dir = scratch("verify");
  write_file(dir / "bf5.json", bf5_json(dir / "out"));
  CHECK(run_cli("verify --config '" + (dir / "bf5.json").string() + "'") == 0);
  const auto report = nlohmann::json::parse(read_file(dir / "out" / "verify_report.json"));
  CHECK(report["passed"] == true);
  CHECK(report["suites"].size() == 10);

  SUBCASE("constant potential") {
    JobConfig c = bf5_config();
    c.omega = {"0", "0", "0", "0", "0"};
    c.t_grid = {-3.0, 3.0, 25};
    const VerifyReport r = run_verify(c, 2);
    CHECK_FALSE(r.skipped);
    for (const auto& s : r.suites) {
      CAPTURE(s.name);
      CHECK(s.passed);
    }
  }
}

TEST_CASE("random three-letter systems pass or are skipped") {
  const std::vector<std::vector<std::string>> bottoms = {{"C", "B", "A"}, {"C", "A", "B"}, {"B", "C", "A"}};
  std::mt19937 rng(777);
  int verified = 0, skipped = 0, attempts = 0;
  while (verified + skipped < 12 && attempts < 5000) {
    ++attempts;
    JobConfig c;
    c.alphabet = {"A", "B", "C"};
    c.pi_top = {"A", "B", "C"};
    c.pi_bottom = bottoms[rng() % bottoms.size()];
    const int length = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < length; ++k) c.rauzy_path += (rng() % 2) ? 't' : 'b';
    c.omega = {"0", "0", "0"};
    c.t_grid = {-3.0, 3.0, 13};
    std::optional<ValidatedJob> job;
    try {
      job = validate(c);
    } catch (const InputError&) {
      continue;  // open path, non-primitive matrix
    }
    const auto space = invariant_space(job->system.matrix);
    if (!space.empty())
      for (int a = 0; a < 3; ++a) c.omega[a] = to_string(space[0][a]);
    CAPTURE(c.rauzy_path);
    const VerifyReport r = run_verify(c, 1);
    if (r.skipped) {
      ++skipped;
      continue;
    }
    ++verified;
    for (const auto& s : r.suites) {
      CAPTURE(s.name);
      CHECK(s.passed);
    }
  }
  CHECK(verified > 0);
  MESSAGE("three-letter systems verified: " << verified << ", skipped: " << skipped);
}
