#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "forge/job.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed_override) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return 2;
  }

  forge::Json document;
  try {
    document = forge::Json::parse(in);
  } catch (const forge::Json::parse_error& err) {
    std::cerr << "error: config is not valid JSON: " << err.what() << "\n";
    return 2;
  }
  if (seed_override) document["seed"] = *seed_override;

  try {
    forge::JobConfig config = forge::parse_job_config(document);
    if (const char* env = std::getenv("FORGE_PRECISION")) {
      unsigned digits = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
      if (digits < 10 || digits > 200) {
        std::cerr << "error: FORGE_PRECISION must be between 10 and 200\n";
        return 2;
      }
      config.precision = digits;
      config.zero_opts.precision = digits;
    }

    forge::RunReport report = forge::run(config, out_dir);

    std::filesystem::create_directories(out_dir);
    std::string report_path = out_dir + "/report.json";
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return 2;
    }
    out << report.json.dump(2) << "\n";
    std::cout << report.json.dump(2) << std::endl;
    return report.passed ? 0 : 1;
  } catch (const forge::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const forge::Json::exception& err) {
    std::cerr << "error: malformed config: " << err.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intertwining-operator workbench: builds first-order intertwinings, "
               "factorizations and Darboux-type transforms of 1-D differential operators, "
               "lifts them to Klein-Gordon potentials, and verifies every identity with "
               "symbolic sampling and finite-difference oracles."};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "run a job described by a JSON config");
  run->add_option("config", config_path, "path to the job config JSON")->required();
  run->add_option("--out", out_dir, "output directory for reports and CSV files");
  run->add_option("--seed", seed, "override the sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run_command(config_path, out_dir, seed);
}
