#include "commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "agisim/errors.hpp"
#include "config_io.hpp"
#include "report_io.hpp"

namespace agisim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::ParseError:
      case ErrorCode::OutOfRange:
      case ErrorCode::InvalidTau:
      case ErrorCode::TooFewPlayers:
      case ErrorCode::UnknownPlayer:
      case ErrorCode::NegativeArgument:
        return kConfigError;
      default:
        return kRuntimeError;
    }
  }
  return kRuntimeError;
}

std::string build_identifier() {
  std::string id = "agisim " AGISIM_VERSION;
#if defined(__clang__)
  id += " clang " __clang_version__;
#elif defined(__GNUC__)
  id += " gcc " __VERSION__;
#endif
  return id;
}

SimulationConfig resolve(SimulationConfig config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.episodes) config.episodes = *o.episodes;
  validate_config(config);
  return config;
}

json make_manifest(const SimulationConfig& config) {
  json seeds = json::array();
  for (std::size_t k = 0; k < config.episodes; ++k) {
    seeds.push_back(episode_seed(config.seed, k));
  }
  json doc = config_to_json(config);
  doc["manifest"] = {{"build", build_identifier()},
                     {"episode_seeds", seeds},
                     {"rng", "xoshiro256** seeded by splitmix64; see docs/rng.md"}};
  return doc;
}

namespace {

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

}  // namespace

RunOutput cmd_run(const SimulationConfig& config, const fs::path& out_dir) {
  validate_config(config);
  fs::create_directories(out_dir);

  RunOutput out;
  out.trajectory_csv = out_dir / "trajectory.csv";
  out.stats_json = out_dir / "stats.json";
  out.manifest_json = out_dir / "manifest.json";

  std::ofstream csv(out.trajectory_csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + out.trajectory_csv.string());
  write_trajectory_header(csv);

  std::vector<EpisodeSummary> summaries;
  summaries.reserve(config.episodes);
  for (std::size_t ep = 0; ep < config.episodes; ++ep) {
    const Trajectory traj = run_episode(config, episode_seed(config.seed, ep));
    write_trajectory_rows(csv, ep, traj);
    summaries.push_back(summarize(traj, config));
  }
  out.stats = aggregate(summaries);

  write_file(out.stats_json, to_json(out.stats).dump(2) + "\n");
  write_file(out.manifest_json, make_manifest(config).dump(2) + "\n");
  return out;
}

CheckResult cmd_check(const SimulationConfig& config) {
  validate_config(config);
  CheckResult r;
  r.conditions = check_theorem1(config.params);
  r.bound.audit_frequency = effective_audit_frequency(config.mechanisms);
  r.bound.xi = config.params.xi;
  r.bound.tau = effective_tau(config.mechanisms);
  r.bound.epsilon = defection_bound(r.bound.audit_frequency, r.bound.xi, r.bound.tau);
  return r;
}

json to_json(const CheckResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"conditions", to_json(r.conditions)},
          {"defection_bound",
           {{"audit_frequency", r.bound.audit_frequency},
            {"xi", r.bound.xi},
            {"tau", r.bound.tau},
            {"epsilon", r.bound.epsilon}}}};
}

std::vector<DeviationReport> cmd_deviate(const SimulationConfig& config,
                                         std::size_t deviant,
                                         const std::string& strategy,
                                         std::int64_t defect_at) {
  validate_config(config);
  const StrategySpec& baseline = config.strategy_for(deviant);
  const auto library = deviation_library(baseline, defect_at);

  std::vector<DeviationReport> reports;
  if (strategy == "library") {
    for (const auto& candidate : library) {
      reports.push_back(run_deviation(config, deviant, candidate));
    }
    return reports;
  }
  for (const auto& candidate : library) {
    if (candidate.name == strategy) {
      reports.push_back(run_deviation(config, deviant, candidate));
      return reports;
    }
  }
  StrategySpec spec = baseline;
  try {
    spec.kind = strategy_kind_from_string(strategy);
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "strategy", "unknown strategy '" + strategy + "'");
  }
  reports.push_back(deviation_test(config, deviant, spec));
  return reports;
}

json to_json(const std::vector<DeviationReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {{"schema_version", kSchemaVersion}, {"deviations", arr}};
}

namespace {

using Setter = std::function<void(SimulationConfig&, double)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    auto param = [&m](const char* name, double Parameters::*field) {
      m[name] = [field](SimulationConfig& c, double v) { c.params.*field = v; };
    };
    param("alpha", &Parameters::alpha);
    param("beta", &Parameters::beta);
    param("gamma", &Parameters::gamma);
    param("lambda_econ", &Parameters::lambda_econ);
    param("mu", &Parameters::mu);
    param("phi", &Parameters::phi);
    param("sigma", &Parameters::sigma);
    param("xi", &Parameters::xi);
    param("eta", &Parameters::eta);
    param("theta", &Parameters::theta);
    param("delta", &Parameters::delta);
    param("mu_c", &Parameters::mu_c);
    param("sigma_c", &Parameters::sigma_c);
    param("p_audit", &Parameters::p_audit);
    param("p_detection", &Parameters::p_detection);
    param("lambda_entry", &Parameters::lambda_entry);
    param("t_bar", &Parameters::t_bar);
    m["horizon"] = [](SimulationConfig& c, double v) { c.params.horizon = static_cast<int>(v); };
    m["n_initial"] = [](SimulationConfig& c, double v) { c.params.n_initial = static_cast<int>(v); };
    m["base_audit_frequency"] = [](SimulationConfig& c, double v) { c.mechanisms.base_audit_frequency = v; };
    m["prereg_audit_boost"] = [](SimulationConfig& c, double v) { c.mechanisms.prereg_audit_boost = v; };
    m["r_cap"] = [](SimulationConfig& c, double v) { c.mechanisms.r_cap = v; };
    m["tau"] = [](SimulationConfig& c, double v) { c.mechanisms.tau = static_cast<int>(v); };
    m["sanction_delay"] = [](SimulationConfig& c, double v) { c.mechanisms.sanction_delay = static_cast<int>(v); };
    m["redemption_steps"] = [](SimulationConfig& c, double v) { c.mechanisms.redemption_steps = static_cast<int>(v); };
    return m;
  }();
  return table;
}

}  // namespace

void set_field(SimulationConfig& config, const std::string& name, double value) {
  const auto it = setters().find(name);
  if (it == setters().end()) {
    throw Error(ErrorCode::ParseError, name, "not a sweepable field");
  }
  it->second(config, value);
}

std::vector<SweepRow> cmd_sweep(const SimulationConfig& config,
                                const std::string& parameter,
                                const std::vector<double>& grid) {
  std::vector<SweepRow> rows;
  for (double value : grid) {
    SimulationConfig c = config;
    set_field(c, parameter, value);
    validate_config(c);
    const EnsembleStats stats = run_ensemble(c);
    const DefectionRateReport bound = empirical_defection_rate(stats, c);
    const ConditionReport cond = check_theorem1(c.params);
    rows.push_back({value, stats.defection_frequency, bound.epsilon,
                    cond.all_conditions() && cond.folk_satisfied
                        ? "cooperative"
                        : "not_guaranteed"});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& parameter,
                     const std::vector<SweepRow>& rows) {
  out << parameter << ",defection_rate,epsilon,verdict\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.value) << ',' << format_number(r.defection_rate)
        << ',' << format_number(r.epsilon) << ',' << r.verdict << '\n';
  }
}

json sweep_to_json(const std::string& parameter, const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"value", r.value},
                   {"defection_rate", r.defection_rate},
                   {"epsilon", r.epsilon},
                   {"verdict", r.verdict}});
  }
  return {{"schema_version", kSchemaVersion}, {"parameter", parameter}, {"rows", arr}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "grid", "bad value '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "grid", "empty grid");
  return out;
}

}  // namespace agisim::cli
