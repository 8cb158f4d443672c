#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "agisim/engine.hpp"
#include "agisim/model.hpp"
#include "agisim/strategy.hpp"

namespace agisim {

// ---------------------------------------------------------------------------
// Cooperative-equilibrium conditions

struct Inequality {
  bool holds = false;
  /// Signed slack: nonnegative (or positive, for strict inequalities)
  /// exactly when `holds`.
  double margin = 0.0;
};

struct ConditionReport {
  Inequality network_effects;         // beta > gamma + xi / mu
  Inequality verification_affordable; // theta <= mu beta / delta
  Inequality punishment_credible;     // xi >= lambda alpha / delta
  double theta_max = 0.0;
  double xi_min = 0.0;

  double pi_cooperate = 0.0;   // mu beta
  double pi_defect = 0.0;      // lambda alpha
  double pi_punishment = 0.0;  // xi

  /// (pi_D - pi_C) / (pi_D - pi_P) as a raw number; empty when the
  /// denominator is zero.
  std::optional<double> folk_delta_min;
  /// pi_D <= pi_P: the ratio is not a threshold on (0, 1).
  bool folk_degenerate = false;
  /// delta (pi_C - pi_P) >= pi_D - pi_C.
  bool folk_loss_exceeds_gain = false;
  /// delta >= delta_min when not degenerate; the loss-vs-gain form otherwise.
  bool folk_satisfied = false;

  bool all_conditions() const {
    return network_effects.holds && verification_affordable.holds &&
           punishment_credible.holds;
  }
};

/// Pure arithmetic on the coefficients; no randomness.
ConditionReport check_theorem1(const Parameters& params);

/// 1 / (1 + p xi tau). Error(NegativeArgument) if any argument is negative.
double defection_bound(double audit_frequency, double xi, double tau);

// ---------------------------------------------------------------------------
// Empirical deviation tests

enum class Verdict : std::uint8_t {
  NoProfitableDeviation,
  ProfitableDeviation,
  Inconclusive,
};

std::string_view to_string(Verdict verdict);

struct DeviationReport {
  std::string deviation;
  std::size_t deviant = 0;
  Estimate baseline;    // deviant's discounted utility, baseline profile
  Estimate deviant_run; // deviant's discounted utility, deviating
  Estimate difference;  // paired per-episode (deviant_run - baseline)
  Verdict verdict = Verdict::Inconclusive;
  std::size_t episodes = 0;
  double tail_bound = 0.0;
};

struct DeviationOptions {
  /// Error(InsufficientEpisodes) when the paired-difference 95% half-width
  /// exceeds this.
  double max_ci_half_width = std::numeric_limits<double>::infinity();
  /// Error(TailBoundExceeded) when the truncation tail exceeds this fraction
  /// of the largest |mean discounted utility| (floored at 1).
  double tail_tolerance = 1e-3;
};

/// Runs the baseline and the deviating profile on common episode seeds and
/// compares the deviant's discounted utility. Verdict from the 95% interval
/// of the paired difference: lower > 0 is profitable, upper <= 0 is not,
/// anything else is inconclusive.
DeviationReport deviation_test(const SimulationConfig& config,
                               std::size_t deviant,
                               const StrategySpec& deviation,
                               const DeviationOptions& options = {});

struct DeviationCandidate {
  std::string name;
  StrategySpec spec;
  /// Run with defect_implies_secrecy switched off (both arms).
  bool decouple_secrecy = false;
};

/// always_defect, defect_once at t = `defect_at`, and defect_share (defect
/// while still sharing), all using the baseline's resource levels.
std::vector<DeviationCandidate> deviation_library(const StrategySpec& baseline,
                                                  std::int64_t defect_at = 0);

DeviationReport run_deviation(const SimulationConfig& config,
                              std::size_t deviant,
                              const DeviationCandidate& candidate,
                              const DeviationOptions& options = {});

// ---------------------------------------------------------------------------
// Supermodularity of information sharing

/// A state, fixed choices for everyone, and the ordered pair (i, j) whose
/// sharing decisions are toggled.
struct SupermodularSample {
  GameState state;
  std::vector<JointChoice> choices;
  std::size_t i = 0;
  std::size_t j = 1;
};

using StateSampler = std::function<SupermodularSample(Rng&)>;

/// Random N-player states with moderate magnitudes (T, K in [0, 10]).
StateSampler default_state_sampler(std::size_t players = 4);

struct SupermodularityReport {
  std::size_t samples = 0;
  std::size_t nonnegative = 0;
  double fraction_nonnegative = 0.0;
  double min_increasing_difference = 0.0;
  /// Largest |numeric - delta phi beta T_j| / |delta phi beta T_j|.
  double max_relative_error = 0.0;
  std::vector<double> increasing_differences;
  std::vector<double> closed_form;
};

/// Two-period value W_i = U_i(t) + delta U_i(t+1) with everyone's choices
/// held for both periods and a fixed verification draw. Reports
/// D = [W(1,1) - W(0,1)] - [W(1,0) - W(0,0)] per sample.
SupermodularityReport supermodularity_check(const Parameters& params,
                                            const StateSampler& sampler,
                                            std::size_t count,
                                            std::uint64_t seed = 0);

/// Two-period value of player i for the given sample, with (s_i, s_j)
/// overriding the sample's choices. Exposed for tests.
double two_period_value(const Parameters& params, const SupermodularSample& s,
                        bool share_i, bool share_j, std::uint64_t verify_seed);

// ---------------------------------------------------------------------------
// Defection-rate bound

struct DefectionRateReport {
  Estimate rate;  // per-episode defect fraction
  double pooled_rate = 0.0;
  double audit_frequency = 0.0;
  double xi = 0.0;
  double tau = 1.0;
  double epsilon = 1.0;
  /// Upper end of the 95% interval (pooled rate when the interval is
  /// degenerate) does not exceed epsilon.
  bool within_bound = false;
};

/// Model-conditional comparison of an ensemble's defection rate with
/// defection_bound(effective audit frequency, xi, effective tau).
DefectionRateReport empirical_defection_rate(const EnsembleStats& stats,
                                             const SimulationConfig& config);

}  // namespace agisim
