#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "agisim/dynamics.hpp"
#include "agisim/mechanisms.hpp"
#include "agisim/model.hpp"
#include "agisim/strategy.hpp"
#include "agisim/trajectory.hpp"

namespace agisim {

/// Explicit founder traits; replaces sampling when given.
struct FounderSpec {
  double compute = 1.0;
  double expertise = 1.0;
  double risk_tolerance = 0.5;

  bool operator==(const FounderSpec&) const = default;
};

struct SimulationConfig {
  Parameters params;
  MechanismConfig mechanisms;
  StrategySpec default_strategy;
  /// Founder index -> strategy. Entrants always use the default.
  std::map<std::size_t, StrategySpec> strategy_overrides;
  std::uint64_t seed = 0;
  std::size_t episodes = 1;
  SecurityTiming security_timing = SecurityTiming::Current;
  double initial_capability = 0.0;
  /// Defect forces s = 0 regardless of the strategy's "share" parameter.
  bool defect_implies_secrecy = true;
  std::vector<FounderSpec> founders;
  TierThresholds tiers;
  /// Worker threads for ensembles; 0 picks the hardware concurrency.
  unsigned threads = 0;

  const StrategySpec& strategy_for(std::size_t position) const;

  bool operator==(const SimulationConfig&) const = default;
};

/// Validates every nested record. Throws Error naming the first bad field.
void validate_config(const SimulationConfig& config);

/// Stream labels used inside one episode. derive_rng(episode_seed, label).
namespace streams {
inline constexpr std::string_view kPopulation = "population";
inline constexpr std::string_view kStrategy = "strategy";
inline constexpr std::string_view kAudit = "audit";
inline constexpr std::string_view kVerification = "verification";
inline constexpr std::string_view kDetection = "detection";
inline constexpr std::string_view kEntry = "entry";
}  // namespace streams

/// Count ~ Poisson(lambda_entry); each entrant drawn with sample_entrant and
/// given the next free id starting at `first_id`.
std::vector<Entrant> spawn_entrants(Rng& rng, const Parameters& params,
                                    std::int64_t t, std::uint32_t first_id);

/// Founders for an episode: explicit specs when configured, otherwise drawn
/// from the population stream.
std::vector<Player> make_founders(const SimulationConfig& config, Rng& rng);

/// One episode. Per step t = 0 .. horizon-1:
///   decide -> apply sanctions -> select audits -> detect -> record stage
///   utilities at t -> transition -> advance sanctions -> publish
///   violations -> admit entrants (active from t + 1).
Trajectory run_episode(const SimulationConfig& config, std::uint64_t episode_seed);

struct EpisodeSummary {
  std::uint64_t seed = 0;
  std::size_t founders = 0;
  std::vector<double> discounted;  // per player position
  std::size_t player_steps = 0;
  std::size_t defect_steps = 0;
  std::size_t audited_defections = 0;
  std::size_t detections = 0;
  std::size_t entrants = 0;
  double tail_bound = 0.0;
  std::array<std::size_t, 3> final_tiers{};  // core, associate, observer

  double defection_rate() const;
  bool operator==(const EpisodeSummary&) const = default;
};

EpisodeSummary summarize(const Trajectory& trajectory,
                         const SimulationConfig& config);

/// Sample mean, unbiased variance and a normal-approximation 95% interval.
/// n = 1 gives zero variance and a degenerate interval.
struct Estimate {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
  bool operator==(const Estimate&) const = default;
};

inline constexpr double kZ95 = 1.959963984540054;

Estimate estimate(std::span<const double> samples);

struct EnsembleStats {
  std::size_t episodes = 0;
  std::vector<Estimate> founder_utility;  // per founder index
  Estimate entrant_utility;               // pooled over all entrants
  Estimate defection_rate;                // per-episode defect fraction
  double defection_frequency = 0.0;       // pooled defect player-steps
  Estimate detections;
  Estimate entrants;
  std::size_t total_detections = 0;
  std::size_t total_entrants = 0;
  std::size_t total_player_steps = 0;
  std::size_t total_defect_steps = 0;
  double max_tail_bound = 0.0;
  std::array<std::size_t, 3> final_tiers{};
  std::vector<EpisodeSummary> per_episode;

  bool operator==(const EnsembleStats&) const = default;
};

/// Aggregates in episode-index order, so the result does not depend on how
/// the summaries were produced.
EnsembleStats aggregate(std::span<const EpisodeSummary> summaries);

/// Runs episodes 0..episodes-1 with episode_seed(config.seed, i), spread
/// over `config.threads` workers.
std::vector<EpisodeSummary> run_summaries(const SimulationConfig& config);

/// As above, but hands episodes to workers in the given order (a
/// permutation of 0..episodes-1). Used to check scheduling independence.
std::vector<EpisodeSummary> run_summaries(const SimulationConfig& config,
                                          std::span<const std::size_t> order);

EnsembleStats run_ensemble(const SimulationConfig& config);

}  // namespace agisim
