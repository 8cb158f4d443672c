#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agisim/errors.hpp"
#include "commands.hpp"
#include "config_io.hpp"
#include "report_io.hpp"

namespace fs = std::filesystem;
using namespace agisim;
using namespace agisim::cli;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> episodes;
  std::string format;
};

void add_common(CLI::App* cmd, Common& c, const char* default_format) {
  cmd->add_option("--config", c.config, "JSON run configuration")->required();
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--seed", c.seed, "Override the master seed");
  cmd->add_option("--episodes", c.episodes, "Override the episode count");
  c.format = default_format;
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
}

SimulationConfig load(const Common& c) {
  return resolve(parse_config(c.config), Overrides{c.seed, c.episodes});
}

void save(const Common& c, const std::string& name, const std::string& body) {
  if (c.out.empty()) return;
  fs::create_directories(c.out);
  std::ofstream(fs::path(c.out) / name, std::ios::binary | std::ios::trunc) << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent simulator for the AGI development game"};
  app.require_subcommand(1);
  app.set_version_flag("--version", build_identifier());

  Common run_opts, check_opts, deviate_opts, sweep_opts;

  auto* run = app.add_subcommand("run", "Run an ensemble and write trajectories");
  add_common(run, run_opts, "csv");

  auto* check = app.add_subcommand("check", "Evaluate the equilibrium conditions");
  add_common(check, check_opts, "text");

  auto* deviate = app.add_subcommand("deviate", "Paired unilateral deviation test");
  add_common(deviate, deviate_opts, "text");
  std::size_t deviant = 0;
  std::string strategy = "always_defect";
  std::int64_t defect_at = 0;
  deviate->add_option("--deviant", deviant, "Founder index that deviates");
  deviate->add_option("--strategy", strategy,
                      "Strategy kind, library entry, or 'library'");
  deviate->add_option("--defect-at", defect_at, "Step for defect_once");

  auto* sweep = app.add_subcommand("sweep", "Defection rate over a parameter grid");
  add_common(sweep, sweep_opts, "csv");
  std::string parameter;
  std::string grid;
  sweep->add_option("--param", parameter, "Field to vary")->required();
  sweep->add_option("--grid", grid, "Comma-separated values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      if (run_opts.out.empty()) run_opts.out = "out";
      const RunOutput out = cmd_run(load(run_opts), run_opts.out);
      std::cout << "wrote " << out.trajectory_csv.string() << ", "
                << out.stats_json.string() << ", " << out.manifest_json.string()
                << '\n';
    } else if (*check) {
      const CheckResult r = cmd_check(load(check_opts));
      const std::string body = to_json(r).dump(2) + "\n";
      if (check_opts.format == "json") {
        std::cout << body;
      } else {
        write_text(std::cout, r.conditions, &r.bound);
      }
      save(check_opts, "check.json", body);
    } else if (*deviate) {
      const auto reports = cmd_deviate(load(deviate_opts), deviant, strategy, defect_at);
      const std::string body = to_json(reports).dump(2) + "\n";
      if (deviate_opts.format == "json") {
        std::cout << body;
      } else {
        for (const auto& r : reports) write_text(std::cout, r);
      }
      save(deviate_opts, "deviation.json", body);
    } else if (*sweep) {
      const auto rows = cmd_sweep(load(sweep_opts), parameter, parse_grid(grid));
      std::ostringstream csv;
      write_sweep_csv(csv, parameter, rows);
      const std::string json_body = sweep_to_json(parameter, rows).dump(2) + "\n";
      std::cout << (sweep_opts.format == "json" ? json_body : csv.str());
      save(sweep_opts, "sweep.csv", csv.str());
      save(sweep_opts, "sweep.json", json_body);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kOk;
}
