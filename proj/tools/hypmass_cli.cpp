// Command-line entry point: load a config, run the selected checks, write
// the report. Exit status 0 iff every selected check passed its tolerance.
#include <CLI11.hpp>
#include <iostream>

#include "hypmass/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mass functional and verification suites for asymptotically "
               "hyperbolic half-space metrics"};

  std::string config_path;
  std::string out_dir;
  std::string format;
  int workers = -1;
  long long seed = -1;

  app.add_option("--config", config_path, "config file (key = value sections)")->required();
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--workers", workers, "worker count (overrides config)");
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--format", format, "report format: json, table or both");

  CLI11_PARSE(app, argc, argv);

  try {
    hypmass::RunConfig cfg = hypmass::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    if (!format.empty()) cfg.format = format;

    const hypmass::RunResult result = hypmass::run(cfg);
    std::cout << hypmass::report_to_table(result);
    return result.ok ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
