#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agisim/dynamics.hpp"
#include "agisim/model.hpp"
#include "agisim/rng.hpp"
#include "agisim/trajectory.hpp"

namespace agisim {

struct Violation {
  PlayerId player{};
  std::int64_t t_detected = 0;

  auto operator<=>(const Violation&) const = default;
};

/// One public history entry: the state aggregates at `t` plus the
/// violations announced between t-1 and t (detected during step t-1).
struct HistoryEntry {
  std::int64_t t = 0;
  double knowledge = 0.0;
  double security = 0.0;
  std::vector<Violation> violations;

  bool operator==(const HistoryEntry&) const = default;
};

/// Append-only public record. Trigger strategies read only this.
class PublicHistory {
 public:
  PublicHistory() = default;
  /// History holding the single entry for t = 0.
  static PublicHistory start(const GameState& initial);

  const std::vector<HistoryEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  const HistoryEntry& back() const { return entries_.back(); }

  bool any_violation() const noexcept { return last_violation_.has_value(); }
  /// Detection time of the most recent announced violation.
  std::optional<std::int64_t> last_violation() const noexcept {
    return last_violation_;
  }

  void append(HistoryEntry entry);

  bool operator==(const PublicHistory&) const = default;

 private:
  std::vector<HistoryEntry> entries_;
  std::optional<std::int64_t> last_violation_;
};

enum class StrategyKind : std::uint8_t {
  GrimTrigger,
  AlwaysCooperate,
  AlwaysDefect,
  TitForTat,
  RationalDefector,
  DefectOnce,
};

std::string_view to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(std::string_view name);

/// Kind-specific keys in `params`:
///   GrimTrigger, DefectOnce: "punishment_length" (0 or absent = permanent)
///   DefectOnce:              "at" (timestep of the single defection)
///   any kind that defects:   "share" (s_i while defecting, default 0)
struct StrategySpec {
  StrategyKind kind = StrategyKind::GrimTrigger;
  double r_cooperate = 0.5;
  double r_defect = 1.0;
  std::map<std::string, double> params;

  double param(std::string_view key, double fallback) const;

  bool operator==(const StrategySpec&) const = default;
};

void validate_strategy(const StrategySpec& spec);

/// What a strategy may look at besides the public history. Only
/// RationalDefector reads the private fields.
struct DecisionContext {
  const GameState* state = nullptr;
  std::size_t position = 0;
  const Parameters* params = nullptr;
  double audit_frequency = 0.0;
  double tau = 1.0;
};

/// One-step gain a RationalDefector weighs: the change in the own-choice
/// terms of the stage utility from switching (Cooperate, r_c, s=1) to
/// (Defect, r_d, s=0):
///   lambda alpha c e (r_d - r_c (1 + gamma)) + eta (r_c^2 - r_d^2) - phi K.
double defection_gain(const StrategySpec& spec, const Player& player,
                      double knowledge, const Parameters& params);

/// RationalDefector rule:
///   defect iff (1 - rho) * gain > audit_frequency * p_detection * xi * tau.
bool rational_defects(const StrategySpec& spec, const DecisionContext& ctx);

JointChoice decide(const StrategySpec& spec, const PublicHistory& history,
                   const DecisionContext& ctx, Rng& rng);

/// Uniform sample without replacement of ceil(frequency * N) players
/// (partial Fisher-Yates over positions), returned sorted.
AuditSelection select_audit_targets(Rng& rng, std::span<const Player> players,
                                    double audit_frequency);

/// flagged = audited && Defect && Bernoulli(p_detection). Always consumes
/// one draw so the stream does not depend on who defected.
DetectionOutcome detect(PlayerId player, const JointChoice& choice,
                        bool audited, Rng& rng, const Parameters& params);

/// Appends (t, K, S, flagged players) with t_detected = t - 1.
PublicHistory update_history(PublicHistory history, std::int64_t t,
                             double knowledge, double security,
                             std::span<const DetectionOutcome> detections);

}  // namespace agisim
