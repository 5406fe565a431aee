#include <iostream>

#include "aiet/empirical.hpp"
#include "aiet/pipeline.hpp"

// Relative error of the refinement estimates against the closed-form
// exponents of the five-letter example at t = 1.
int main(int argc, char** argv) {
  const int max_depth = argc > 1 ? std::atoi(argv[1]) : 9;
  const double t = 1.0;
  auto job = aiet::validate(aiet::bf5_config());
  const auto model = aiet::RegularityModel::build(std::move(job.system), std::move(job.omega));
  const auto exact = aiet::regularity_row(model, t);
  std::cout << "depth,cells,est_holder_h,rel_err_h,est_holder_hinv,rel_err_hinv\n";
  for (int depth = 1; depth <= max_depth; ++depth) {
    aiet::EmpiricalOptions options;
    options.depth = depth;
    options.max_cells = 100'000'000;
    const auto r = aiet::empirical_conjugacy(model, t, options);
    std::cout << depth << ',' << r.cell_count << ',' << aiet::format_real(r.est_holder_h) << ','
              << aiet::format_real((r.est_holder_h - exact.holder_h) / exact.holder_h) << ','
              << aiet::format_real(r.est_holder_hinv) << ','
              << aiet::format_real((r.est_holder_hinv - exact.holder_hinv) / exact.holder_hinv) << '\n';
  }
}
