#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "alc/config.hpp"
#include "alc/errors.hpp"
#include "alc/report.hpp"
#include "alc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verify arithmetic Levi-Civita connections and their curvature"};
  std::string config_path, report_path;
  alc::u64 seed = 1;
  int jobs = 1;
  bool timing = false, quiet = false;
  app.add_option("--config", config_path, "job configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--report", report_path, "write the report here instead of stdout (overrides [run] report)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed for evaluation-based checks");
  app.add_option("--jobs", jobs, "number of jobs run concurrently")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "include wall-clock seconds per job (report is then not reproducible)");
  app.add_flag("-q,--quiet", quiet, "no per-job summary on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  alc::RunConfig rc;
  try {
    rc = alc::load_config(config_path);
  } catch (const alc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!seed_opt->count() && rc.seed) seed = *rc.seed;
  if (report_path.empty() && rc.report) report_path = *rc.report;

  alc::RunResult res;
  try {
    res = alc::run_config(rc, seed, jobs);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  const std::string text = alc::render_report(res, {timing});
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << report_path << "\n";
      return 2;
    }
    out << text;
  }
  if (!quiet) {
    for (const auto& j : res.jobs) {
      size_t ok = 0;
      for (const auto& c : j.checks) ok += c.pass;
      std::cerr << alc::status_name(j.status) << "  " << j.job.name << " (" << j.job.command << "): " << ok << "/"
                << j.checks.size() << " checks";
      if (!j.error.empty()) std::cerr << "; " << j.error;
      std::cerr << "\n";
    }
  }
  return res.exit_code;
}
