#include "report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "config_io.hpp"

namespace agisim::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0 into 0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_trajectory_header(std::ostream& out) { out << kTrajectoryHeader << '\n'; }

void write_trajectory_rows(std::ostream& out, std::size_t episode,
                           const Trajectory& traj) {
  for (const StepRecord& step : traj.steps) {
    const GameState& s = step.state;
    const auto audited = step.audits.mask(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const JointChoice& c = step.choices[i];
      out << episode << ',' << s.t << ',' << index_of(s.players[i].id) << ','
          << to_string(c.action) << ',' << format_number(c.resource) << ','
          << (c.share ? 1 : 0) << ',' << format_number(s.capability[i]) << ','
          << format_number(s.knowledge) << ',' << format_number(s.security)
          << ',' << static_cast<int>(s.verified[i]) << ','
          << to_string(s.sanctions[i].level) << ','
          << format_number(step.utilities[i].total) << ','
          << static_cast<int>(audited[i]) << ','
          << (step.detections[i].flagged ? 1 : 0) << '\n';
    }
  }
}

json to_json(const Estimate& e) {
  return {{"n", e.n},
          {"mean", e.mean},
          {"variance", e.variance},
          {"ci_low", e.ci_low},
          {"ci_high", e.ci_high}};
}

namespace {

json tiers_json(const std::array<std::size_t, 3>& t) {
  return {{"core", t[0]}, {"associate", t[1]}, {"observer", t[2]}};
}

json inequality_json(const Inequality& q) {
  return {{"holds", q.holds}, {"margin", q.margin}};
}

}  // namespace

json to_json(const EnsembleStats& st) {
  json founders = json::array();
  for (const Estimate& e : st.founder_utility) founders.push_back(to_json(e));
  json episodes = json::array();
  for (const EpisodeSummary& s : st.per_episode) {
    episodes.push_back({{"seed", s.seed},
                        {"discounted_utility", s.discounted},
                        {"player_steps", s.player_steps},
                        {"defect_steps", s.defect_steps},
                        {"audited_defections", s.audited_defections},
                        {"detections", s.detections},
                        {"entrants", s.entrants},
                        {"tail_bound", s.tail_bound},
                        {"final_tiers", tiers_json(s.final_tiers)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"episodes", st.episodes},
          {"founder_utility", founders},
          {"entrant_utility", to_json(st.entrant_utility)},
          {"defection_rate", to_json(st.defection_rate)},
          {"defection_frequency", st.defection_frequency},
          {"detections", to_json(st.detections)},
          {"entrants", to_json(st.entrants)},
          {"total_detections", st.total_detections},
          {"total_entrants", st.total_entrants},
          {"total_player_steps", st.total_player_steps},
          {"total_defect_steps", st.total_defect_steps},
          {"max_tail_bound", st.max_tail_bound},
          {"final_tiers", tiers_json(st.final_tiers)},
          {"per_episode", episodes}};
}

json to_json(const ConditionReport& r) {
  json folk = {{"delta_min", nullptr},
               {"degenerate", r.folk_degenerate},
               {"loss_exceeds_gain", r.folk_loss_exceeds_gain},
               {"satisfied", r.folk_satisfied}};
  if (r.folk_delta_min) folk["delta_min"] = *r.folk_delta_min;
  return {{"network_effects", inequality_json(r.network_effects)},
          {"verification_affordable", inequality_json(r.verification_affordable)},
          {"punishment_credible", inequality_json(r.punishment_credible)},
          {"all_conditions", r.all_conditions()},
          {"theta_max", r.theta_max},
          {"xi_min", r.xi_min},
          {"pi_cooperate", r.pi_cooperate},
          {"pi_defect", r.pi_defect},
          {"pi_punishment", r.pi_punishment},
          {"folk", folk}};
}

json to_json(const DeviationReport& r) {
  return {{"deviation", r.deviation},
          {"deviant", r.deviant},
          {"baseline", to_json(r.baseline)},
          {"deviant_run", to_json(r.deviant_run)},
          {"difference", to_json(r.difference)},
          {"verdict", to_string(r.verdict)},
          {"episodes", r.episodes},
          {"tail_bound", r.tail_bound}};
}

json to_json(const DefectionRateReport& r) {
  return {{"audit_frequency", r.audit_frequency},
          {"xi", r.xi},
          {"tau", r.tau},
          {"epsilon", r.epsilon},
          {"rate", to_json(r.rate)},
          {"pooled_rate", r.pooled_rate},
          {"within_bound", r.within_bound}};
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

void write_text(std::ostream& out, const ConditionReport& r,
                const DefectionRateReport* bound) {
  out << "network effects dominate     beta > gamma + xi/mu      "
      << yes_no(r.network_effects.holds) << "  (margin "
      << format_number(r.network_effects.margin) << ")\n";
  out << "verification affordable      theta <= mu*beta/delta    "
      << yes_no(r.verification_affordable.holds) << "  (margin "
      << format_number(r.verification_affordable.margin) << ")\n";
  out << "punishments credible         xi >= lambda*alpha/delta  "
      << yes_no(r.punishment_credible.holds) << "  (margin "
      << format_number(r.punishment_credible.margin) << ")\n";
  out << "pi_cooperate " << format_number(r.pi_cooperate) << "  pi_defect "
      << format_number(r.pi_defect) << "  pi_punishment "
      << format_number(r.pi_punishment) << '\n';
  out << "folk delta_min ";
  if (r.folk_delta_min) {
    out << format_number(*r.folk_delta_min);
  } else {
    out << "undefined";
  }
  out << (r.folk_degenerate ? " (degenerate)" : "") << "  satisfied "
      << yes_no(r.folk_satisfied) << '\n';
  if (bound) {
    out << "defection bound epsilon(p=" << format_number(bound->audit_frequency)
        << ", xi=" << format_number(bound->xi)
        << ", tau=" << format_number(bound->tau)
        << ") = " << format_number(bound->epsilon) << '\n';
  }
}

void write_text(std::ostream& out, const DeviationReport& r) {
  out << r.deviation << " by founder " << r.deviant << " over " << r.episodes
      << " paired episodes\n";
  out << "  baseline   " << format_number(r.baseline.mean) << "  ["
      << format_number(r.baseline.ci_low) << ", "
      << format_number(r.baseline.ci_high) << "]\n";
  out << "  deviating  " << format_number(r.deviant_run.mean) << "  ["
      << format_number(r.deviant_run.ci_low) << ", "
      << format_number(r.deviant_run.ci_high) << "]\n";
  out << "  difference " << format_number(r.difference.mean) << "  ["
      << format_number(r.difference.ci_low) << ", "
      << format_number(r.difference.ci_high) << "]\n";
  out << "  verdict    " << to_string(r.verdict) << '\n';
}

}  // namespace agisim::cli
