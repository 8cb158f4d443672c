#include "config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "agisim/errors.hpp"

namespace agisim::cli {

using nlohmann::json;

namespace {

/// Walks one JSON object, consuming known keys; finish() rejects leftovers.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw Error(ErrorCode::ParseError, path_.empty() ? "<root>" : path_,
                  "expected an object");
    }
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = obj_.find(std::string(key));
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw type_error(key, "number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void integer(std::string_view key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw type_error(key, "integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = v->get<Int>();
        } else {
          throw type_error(key, "nonnegative integer");
        }
      } else {
        out = v->get<Int>();
      }
    }
  }

  void boolean(std::string_view key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw type_error(key, "boolean");
      out = v->get<bool>();
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw type_error(key, "string");
      out = v->get<std::string>();
    }
  }

  void interval(std::string_view key, Interval& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() ||
          !(*v)[1].is_number()) {
        throw type_error(key, "[lo, hi] pair");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) {
        throw Error(ErrorCode::ParseError, field(key), "unknown field");
      }
    }
  }

 private:
  Error type_error(std::string_view key, const char* expected) const {
    return Error(ErrorCode::ParseError, field(key),
                 std::string("expected ") + expected);
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_parameters(const json& j, Parameters& p) {
  ObjectReader r(j, "parameters");
  r.number("alpha", p.alpha);
  r.number("beta", p.beta);
  r.number("gamma", p.gamma);
  r.number("lambda_econ", p.lambda_econ);
  r.number("mu", p.mu);
  r.number("phi", p.phi);
  r.number("sigma", p.sigma);
  r.number("xi", p.xi);
  r.number("eta", p.eta);
  r.number("theta", p.theta);
  r.number("delta", p.delta);
  r.number("mu_c", p.mu_c);
  r.number("sigma_c", p.sigma_c);
  r.number("p_audit", p.p_audit);
  r.number("p_detection", p.p_detection);
  r.number("lambda_entry", p.lambda_entry);
  r.number("t_bar", p.t_bar);
  r.integer("horizon", p.horizon);
  r.integer("n_initial", p.n_initial);
  r.interval("expertise", p.expertise);
  r.interval("risk_tolerance", p.risk_tolerance);
  r.boolean("frontier_founder", p.frontier_founder);
  r.finish();
}

void read_mechanisms(const json& j, MechanismConfig& m) {
  ObjectReader r(j, "mechanisms");
  r.boolean("preregistration_enabled", m.preregistration_enabled);
  r.number("base_audit_frequency", m.base_audit_frequency);
  r.number("prereg_audit_boost", m.prereg_audit_boost);
  r.boolean("staged_deployment_enabled", m.staged_deployment_enabled);
  r.integer("tau", m.tau);
  r.boolean("sanctions_enabled", m.sanctions_enabled);
  r.integer("sanction_delay", m.sanction_delay);
  r.integer("redemption_steps", m.redemption_steps);
  r.number("r_cap", m.r_cap);
  r.finish();
}

StrategySpec read_strategy(const json& j, const std::string& path,
                           double r_cooperate, double r_defect) {
  ObjectReader r(j, path);
  StrategySpec spec;
  spec.r_cooperate = r_cooperate;
  spec.r_defect = r_defect;
  std::string kind{to_string(spec.kind)};
  r.string("kind", kind);
  try {
    spec.kind = strategy_kind_from_string(kind);
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, r.field("kind"),
                "unknown strategy '" + kind + "'");
  }
  r.number("r_cooperate", spec.r_cooperate);
  r.number("r_defect", spec.r_defect);
  if (const json* params = r.find("params")) {
    if (!params->is_object()) {
      throw Error(ErrorCode::ParseError, r.field("params"), "expected an object");
    }
    for (const auto& [key, value] : params->items()) {
      if (!value.is_number()) {
        throw Error(ErrorCode::ParseError, r.field("params") + "." + key,
                    "expected number");
      }
      spec.params[key] = value.get<double>();
    }
  }
  r.finish();
  return spec;
}

FounderSpec read_founder(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  FounderSpec f;
  r.number("compute", f.compute);
  r.number("expertise", f.expertise);
  r.number("risk_tolerance", f.risk_tolerance);
  r.finish();
  return f;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') ++line;
  }
  return line;
}

}  // namespace

std::string_view to_string(SecurityTiming timing) {
  return timing == SecurityTiming::Current ? "current" : "lagged";
}

SimulationConfig config_from_json(const json& doc) {
  ObjectReader r(doc, "");
  SimulationConfig c;

  int schema = kSchemaVersion;
  r.integer("schema_version", schema);
  if (schema != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "schema_version",
                "unsupported version " + std::to_string(schema));
  }
  r.find("manifest");

  r.integer("seed", c.seed);
  r.integer("episodes", c.episodes);
  r.integer("threads", c.threads);
  r.number("initial_capability", c.initial_capability);
  r.boolean("defect_implies_secrecy", c.defect_implies_secrecy);

  std::string timing{to_string(c.security_timing)};
  r.string("security_timing", timing);
  if (timing == "current") {
    c.security_timing = SecurityTiming::Current;
  } else if (timing == "lagged") {
    c.security_timing = SecurityTiming::Lagged;
  } else {
    throw Error(ErrorCode::ParseError, "security_timing",
                "expected 'current' or 'lagged'");
  }

  double r_cooperate = c.default_strategy.r_cooperate;
  double r_defect = c.default_strategy.r_defect;
  r.number("r_cooperate", r_cooperate);
  r.number("r_defect", r_defect);

  if (const json* p = r.find("parameters")) read_parameters(*p, c.params);
  if (const json* m = r.find("mechanisms")) read_mechanisms(*m, c.mechanisms);

  c.default_strategy.r_cooperate = r_cooperate;
  c.default_strategy.r_defect = r_defect;
  if (const json* s = r.find("strategy")) {
    c.default_strategy = read_strategy(*s, "strategy", r_cooperate, r_defect);
  }
  if (const json* o = r.find("strategy_overrides")) {
    if (!o->is_object()) {
      throw Error(ErrorCode::ParseError, "strategy_overrides", "expected an object");
    }
    for (const auto& [key, value] : o->items()) {
      const std::string path = "strategy_overrides." + key;
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, path, "key must be a founder index");
      }
      c.strategy_overrides[idx] = read_strategy(value, path, r_cooperate, r_defect);
    }
  }

  if (const json* f = r.find("founders")) {
    if (!f->is_array()) throw Error(ErrorCode::ParseError, "founders", "expected an array");
    for (std::size_t k = 0; k < f->size(); ++k) {
      c.founders.push_back(read_founder((*f)[k], "founders." + std::to_string(k)));
    }
  }
  if (const json* t = r.find("tiers")) {
    ObjectReader tr(*t, "tiers");
    tr.number("compute_fraction_min", c.tiers.compute_fraction_min);
    tr.number("capability_fraction_min", c.tiers.capability_fraction_min);
    tr.finish();
  }
  r.finish();

  validate_config(c);
  return c;
}

SimulationConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)),
                e.what());
  }
  return config_from_json(doc);
}

SimulationConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json strategy_to_json(const StrategySpec& s) {
  json params = json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  return {{"kind", to_string(s.kind)},
          {"r_cooperate", s.r_cooperate},
          {"r_defect", s.r_defect},
          {"params", params}};
}

json config_to_json(const SimulationConfig& c) {
  const Parameters& p = c.params;
  const MechanismConfig& m = c.mechanisms;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = c.seed;
  j["episodes"] = c.episodes;
  j["threads"] = c.threads;
  j["security_timing"] = to_string(c.security_timing);
  j["initial_capability"] = c.initial_capability;
  j["defect_implies_secrecy"] = c.defect_implies_secrecy;
  j["r_cooperate"] = c.default_strategy.r_cooperate;
  j["r_defect"] = c.default_strategy.r_defect;
  j["parameters"] = {
      {"alpha", p.alpha},
      {"beta", p.beta},
      {"gamma", p.gamma},
      {"lambda_econ", p.lambda_econ},
      {"mu", p.mu},
      {"phi", p.phi},
      {"sigma", p.sigma},
      {"xi", p.xi},
      {"eta", p.eta},
      {"theta", p.theta},
      {"delta", p.delta},
      {"mu_c", p.mu_c},
      {"sigma_c", p.sigma_c},
      {"p_audit", p.p_audit},
      {"p_detection", p.p_detection},
      {"lambda_entry", p.lambda_entry},
      {"t_bar", p.t_bar},
      {"horizon", p.horizon},
      {"n_initial", p.n_initial},
      {"expertise", {p.expertise.lo, p.expertise.hi}},
      {"risk_tolerance", {p.risk_tolerance.lo, p.risk_tolerance.hi}},
      {"frontier_founder", p.frontier_founder},
  };
  j["mechanisms"] = {
      {"preregistration_enabled", m.preregistration_enabled},
      {"base_audit_frequency", m.base_audit_frequency},
      {"prereg_audit_boost", m.prereg_audit_boost},
      {"staged_deployment_enabled", m.staged_deployment_enabled},
      {"tau", m.tau},
      {"sanctions_enabled", m.sanctions_enabled},
      {"sanction_delay", m.sanction_delay},
      {"redemption_steps", m.redemption_steps},
      {"r_cap", m.r_cap},
  };
  j["strategy"] = strategy_to_json(c.default_strategy);
  json overrides = json::object();
  for (const auto& [idx, spec] : c.strategy_overrides) {
    overrides[std::to_string(idx)] = strategy_to_json(spec);
  }
  j["strategy_overrides"] = overrides;
  json founders = json::array();
  for (const FounderSpec& f : c.founders) {
    founders.push_back({{"compute", f.compute},
                        {"expertise", f.expertise},
                        {"risk_tolerance", f.risk_tolerance}});
  }
  j["founders"] = founders;
  j["tiers"] = {{"compute_fraction_min", c.tiers.compute_fraction_min},
                {"capability_fraction_min", c.tiers.capability_fraction_min}};
  return j;
}

}  // namespace agisim::cli
