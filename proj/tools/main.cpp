#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace blendspline::cli;
  RunConfig cfg;
  CLI::App app{"Local blended spline interpolation of sampled data"};
  app.add_option("--order,-m", cfg.order, "spline order m (>= 3)");
  app.add_option("--in", cfg.in, "input CSV with header y,f (default: stdin)");
  app.add_option("--out", cfg.out, "output path (default: stdout)");
  auto* count = app.add_option("--eval-count", cfg.eval_count, "evaluation points per sample interval");
  auto* at = app.add_option("--eval-at", cfg.eval_at, "explicit evaluation abscissas")->delimiter(',');
  count->excludes(at);
  app.add_option("--derivs", cfg.derivs, "endpoint derivatives: auto, or a CSV file side,order,value");
  const std::map<std::string, Mode> modes{{"batch", Mode::batch}, {"stream", Mode::stream}};
  app.add_option("--mode", cfg.mode, "batch or stream")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  const std::map<std::string, Emit> emits{
      {"values", Emit::values}, {"coeffs", Emit::coeffs}, {"bounds", Emit::bounds}, {"convergence", Emit::convergence}};
  app.add_option("--emit", cfg.emit, "values, coeffs, bounds or convergence")
      ->transform(CLI::CheckedTransformer(emits, CLI::ignore_case));
  app.add_option("--deriv-columns", cfg.deriv_columns, "derivative columns d1..dk to append (k <= m-1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : io_failure;
  }
  std::ios::sync_with_stdio(false);
  return run(cfg, std::cin, std::cout, std::cerr);
}
