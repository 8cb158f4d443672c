#include "agisim/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "agisim/errors.hpp"

namespace agisim {

PublicHistory PublicHistory::start(const GameState& initial) {
  PublicHistory h;
  h.append(HistoryEntry{initial.t, initial.knowledge, initial.security, {}});
  return h;
}

void PublicHistory::append(HistoryEntry entry) {
  if (!entries_.empty() && entry.t != entries_.back().t + 1) {
    throw Error(ErrorCode::OutOfRange, "t", "history entries must be consecutive");
  }
  for (const Violation& v : entry.violations) {
    if (!last_violation_ || v.t_detected > *last_violation_) {
      last_violation_ = v.t_detected;
    }
  }
  entries_.push_back(std::move(entry));
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::GrimTrigger: return "grim_trigger";
    case StrategyKind::AlwaysCooperate: return "always_cooperate";
    case StrategyKind::AlwaysDefect: return "always_defect";
    case StrategyKind::TitForTat: return "tit_for_tat";
    case StrategyKind::RationalDefector: return "rational_defector";
    case StrategyKind::DefectOnce: return "defect_once";
  }
  return "grim_trigger";
}

StrategyKind strategy_kind_from_string(std::string_view name) {
  for (auto kind : {StrategyKind::GrimTrigger, StrategyKind::AlwaysCooperate,
                    StrategyKind::AlwaysDefect, StrategyKind::TitForTat,
                    StrategyKind::RationalDefector, StrategyKind::DefectOnce}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::ParseError, std::string(name), "unknown strategy kind");
}

double StrategySpec::param(std::string_view key, double fallback) const {
  const auto it = params.find(std::string(key));
  return it == params.end() ? fallback : it->second;
}

void validate_strategy(const StrategySpec& spec) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(spec.r_cooperate)) throw Error(ErrorCode::OutOfRange, "r_cooperate");
  if (!in_unit(spec.r_defect)) throw Error(ErrorCode::OutOfRange, "r_defect");
  const double share = spec.param("share", 0.0);
  if (share != 0.0 && share != 1.0) throw Error(ErrorCode::OutOfRange, "share");
  if (spec.param("punishment_length", 0.0) < 0.0) {
    throw Error(ErrorCode::OutOfRange, "punishment_length");
  }
}

namespace {

JointChoice cooperate(const StrategySpec& spec) {
  return {Action::Cooperate, spec.r_cooperate, true};
}

JointChoice defect(const StrategySpec& spec) {
  return {Action::Defect, spec.r_defect, spec.param("share", 0.0) == 1.0};
}

/// Punishment phase of a trigger strategy at decision time t.
bool punishing(const StrategySpec& spec, const PublicHistory& history,
               std::int64_t t) {
  const auto last = history.last_violation();
  if (!last) return false;
  const double length = spec.param("punishment_length", 0.0);
  if (length <= 0.0) return true;
  // Violation detected at step t_d is public from t_d + 1; punish for
  // `length` steps starting there.
  return static_cast<double>(t - (*last + 1)) < length;
}

}  // namespace

double defection_gain(const StrategySpec& spec, const Player& player,
                      double knowledge, const Parameters& params) {
  const double rc = spec.r_cooperate;
  const double rd = spec.r_defect;
  return params.lambda_econ * params.alpha * player.compute * player.expertise *
             (rd - rc * (1.0 + params.gamma)) +
         params.eta * (rc * rc - rd * rd) - params.phi * knowledge;
}

bool rational_defects(const StrategySpec& spec, const DecisionContext& ctx) {
  const Player& player = ctx.state->players[ctx.position];
  const double gain =
      defection_gain(spec, player, ctx.state->knowledge, *ctx.params);
  const double p_flag = ctx.audit_frequency * ctx.params->p_detection;
  return (1.0 - player.risk_tolerance) * gain >
         p_flag * ctx.params->xi * ctx.tau;
}

JointChoice decide(const StrategySpec& spec, const PublicHistory& history,
                   const DecisionContext& ctx, Rng&) {
  const std::int64_t t = history.empty() ? 0 : history.back().t;
  switch (spec.kind) {
    case StrategyKind::AlwaysCooperate:
      return cooperate(spec);
    case StrategyKind::AlwaysDefect:
      return defect(spec);
    case StrategyKind::GrimTrigger:
      return punishing(spec, history, t) ? defect(spec) : cooperate(spec);
    case StrategyKind::DefectOnce: {
      const auto at = static_cast<std::int64_t>(spec.param("at", 0.0));
      if (t == at) return defect(spec);
      return punishing(spec, history, t) ? defect(spec) : cooperate(spec);
    }
    case StrategyKind::TitForTat:
      if (!history.empty() && !history.back().violations.empty()) {
        return defect(spec);
      }
      return cooperate(spec);
    case StrategyKind::RationalDefector:
      return rational_defects(spec, ctx) ? defect(spec) : cooperate(spec);
  }
  return cooperate(spec);
}

AuditSelection select_audit_targets(Rng& rng, std::span<const Player> players,
                                    double audit_frequency) {
  if (!(audit_frequency >= 0.0 && audit_frequency <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "audit_frequency");
  }
  const std::size_t n = players.size();
  auto k = static_cast<std::size_t>(
      std::ceil(audit_frequency * static_cast<double>(n)));
  if (k > n) k = n;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
  }

  AuditSelection sel;
  sel.players.reserve(k);
  for (std::size_t i = 0; i < k; ++i) sel.players.push_back(players[order[i]].id);
  std::sort(sel.players.begin(), sel.players.end());
  return sel;
}

DetectionOutcome detect(PlayerId player, const JointChoice& choice,
                        bool audited, Rng& rng, const Parameters& params) {
  const bool hit = rng.bernoulli(params.p_detection);
  DetectionOutcome out;
  out.player = player;
  out.audited = audited;
  out.truly_defecting = choice.action == Action::Defect;
  out.flagged = audited && out.truly_defecting && hit;
  return out;
}

PublicHistory update_history(PublicHistory history, std::int64_t t,
                             double knowledge, double security,
                             std::span<const DetectionOutcome> detections) {
  HistoryEntry entry{t, knowledge, security, {}};
  for (const DetectionOutcome& d : detections) {
    if (d.flagged) entry.violations.push_back({d.player, t - 1});
  }
  history.append(std::move(entry));
  return history;
}

}  // namespace agisim
