#include <iostream>

#include <CLI11.hpp>

#include "aiet/errors.hpp"
#include "aiet/pipeline.hpp"

namespace {

void print_summary_line(const aiet::AnalysisResult& result, const std::filesystem::path& dir) {
  const auto& s = result.summary;
  std::cout << "theta0 " << aiet::format_real(s.theta0) << "  |Sigma| " << s.sigma_size << "  phi_bar "
            << s.phi_bar << "  phi_under " << s.phi_under << "\n";
  if (result.empirical)
    std::cout << "empirical depth " << result.empirical->depth << ": " << result.empirical->cell_count
              << " cells, holder_h ~ " << aiet::format_real(result.empirical->est_holder_h) << ", holder_hinv ~ "
              << aiet::format_real(result.empirical->est_holder_hinv) << "\n";
  std::cout << "outputs written to " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity of conjugacies for self-similar affine interval exchanges"};
  app.require_subcommand(1);

  std::string analyze_config;
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on a JSON job");
  analyze->add_option("--config", analyze_config, "job file")->required();

  std::string example_name;
  std::string example_out = "bf5_out";
  std::string golden;
  auto* example = app.add_subcommand("example", "Run a built-in example and compare with reference data");
  example->add_option("name", example_name, "example name")->required()->check(CLI::IsMember({"bf5"}));
  example->add_option("--out", example_out, "output directory");
  example->add_option("--golden", golden, "reference data replacing the embedded copy");

  std::string verify_config;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites on a JSON job");
  verify->add_option("--config", verify_config, "job file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : aiet::exit_invalid_config;
  }

  try {
    const int threads = aiet::thread_budget();
    if (*analyze) {
      const auto config = aiet::load_config(analyze_config);
      print_summary_line(aiet::run_analyze(config, threads), config.output_dir);
    } else if (*example) {
      std::optional<std::filesystem::path> golden_path;
      if (!golden.empty()) golden_path = golden;
      const auto result = aiet::run_example_bf5(example_out, threads, golden_path);
      print_summary_line(result, example_out);
      std::cout << "golden comparison passed\n";
    } else if (*verify) {
      const auto config = aiet::load_config(verify_config);
      const auto report = aiet::run_verify(config, threads);
      const std::string text = report.to_json();
      std::filesystem::create_directories(config.output_dir);
      aiet::write_atomic(config.output_dir / "verify_report.json", text);
      std::cout << text;
      if (!report.passed()) return aiet::exit_mismatch;
    }
  } catch (const std::exception& e) {
    const int code = aiet::exit_code_for_current_exception();
    std::cerr << "error: " << e.what() << "\n";
    return code;
  }
  return 0;
}
