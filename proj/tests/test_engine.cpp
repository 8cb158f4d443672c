#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "agisim/engine.hpp"
#include "agisim/payoff.hpp"
#include "test_util.hpp"

using namespace agisim;
using agisim::testing::close;
using agisim::testing::expect_error;

namespace {

SimulationConfig small_config(StrategyKind kind, int horizon = 3) {
  SimulationConfig c;
  c.params.horizon = horizon;
  c.params.lambda_entry = 0.0;
  c.default_strategy.kind = kind;
  c.seed = 11;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(Episode, AllCooperateNoViolationsAndGrowingKnowledge) {
  SimulationConfig c = small_config(StrategyKind::AlwaysCooperate);
  c.initial_capability = 0.5;
  const Trajectory traj = run_episode(c, 1);
  ASSERT_EQ(traj.steps.size(), 3u);
  double k = -1;
  for (const StepRecord& step : traj.steps) {
    for (const auto& d : step.detections) EXPECT_FALSE(d.flagged);
    EXPECT_GT(step.state.knowledge, k);
    k = step.state.knowledge;
  }
  EXPECT_GT(traj.final_state.knowledge, k);
}

TEST(Episode, AllDefectKnowledgeStaysAtInitialValue) {
  SimulationConfig c = small_config(StrategyKind::AlwaysDefect, 20);
  c.initial_capability = 1.0;
  const Trajectory traj = run_episode(c, 2);
  for (const StepRecord& step : traj.steps) EXPECT_EQ(step.state.knowledge, 0.0);
  EXPECT_EQ(traj.final_state.knowledge, 0.0);
}

TEST(Episode, SameSeedBitIdentical) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 50);
  c.params.lambda_entry = 0.3;
  c.strategy_overrides[0].kind = StrategyKind::AlwaysDefect;
  EXPECT_EQ(run_episode(c, 77), run_episode(c, 77));
  EXPECT_NE(run_episode(c, 77), run_episode(c, 78));
}

TEST(Episode, TimestepsIncreaseByOneAndUtilitiesCoverActivePlayers) {
  SimulationConfig c = small_config(StrategyKind::TitForTat, 40);
  c.params.lambda_entry = 0.5;
  const Trajectory traj = run_episode(c, 3);
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    const StepRecord& step = traj.steps[k];
    ASSERT_EQ(step.state.t, static_cast<std::int64_t>(k));
    ASSERT_EQ(step.utilities.size(), step.state.size());
    ASSERT_EQ(step.choices.size(), step.state.size());
    ASSERT_NO_THROW(check_invariants(step.state));
  }
  EXPECT_EQ(traj.final_state.t, 40);
}

TEST(Episode, AccountingConservation) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 60);
  c.params.lambda_entry = 0.2;
  c.mechanisms.base_audit_frequency = 0.7;
  c.strategy_overrides[1].kind = StrategyKind::AlwaysDefect;
  const Trajectory traj = run_episode(c, 4);
  for (const StepRecord& step : traj.steps) {
    double parts = 0, totals = 0;
    for (const auto& u : step.utilities) {
      parts += u.economic + u.security - u.costs;
      totals += u.total;
    }
    ASSERT_TRUE(close(parts, totals, 1e-9));
  }
}

TEST(Episode, PopulationCountsFoundersPlusEntrants) {
  SimulationConfig c = small_config(StrategyKind::AlwaysCooperate, 200);
  c.params.lambda_entry = 0.1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trajectory traj = run_episode(c, seed);
    const auto& everyone = traj.final_state.players;
    for (const StepRecord& step : traj.steps) {
      // Nobody leaves, and an entrant stamped t is active from t.
      const auto arrived = std::count_if(
          everyone.begin() + 3, everyone.end(),
          [&](const Player& p) { return p.entry_time <= step.state.t; });
      ASSERT_EQ(step.state.size(), 3 + static_cast<std::size_t>(arrived));
    }
    EXPECT_EQ(everyone.size(), 3 + summarize(traj, c).entrants);
  }
}

TEST(Episode, NoFalsePositivesOverSimulation) {
  SimulationConfig c = small_config(StrategyKind::TitForTat, 100);
  c.mechanisms.base_audit_frequency = 1.0;
  c.strategy_overrides[0].kind = StrategyKind::AlwaysDefect;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Trajectory traj = run_episode(c, seed);
    for (const StepRecord& step : traj.steps) {
      for (std::size_t i = 0; i < step.detections.size(); ++i) {
        if (step.detections[i].flagged) {
          ASSERT_EQ(step.choices[i].action, Action::Defect);
          ASSERT_TRUE(step.detections[i].audited);
        }
        if (!step.audits.contains(step.state.players[i].id)) {
          ASSERT_FALSE(step.detections[i].audited);
        }
      }
    }
  }
}

TEST(Episode, GrimTriggerPunishesAfterPublishedViolation) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 30);
  c.mechanisms.base_audit_frequency = 1.0;
  c.params.p_detection = 1.0;
  c.strategy_overrides[0].kind = StrategyKind::AlwaysDefect;
  const Trajectory traj = run_episode(c, 5);
  // Founder 0 defects at t=0 and is flagged; everyone else defects from t=1.
  EXPECT_TRUE(traj.steps[0].detections[0].flagged);
  EXPECT_EQ(traj.steps[0].choices[1].action, Action::Cooperate);
  for (std::size_t k = 1; k < traj.steps.size(); ++k) {
    for (const auto& choice : traj.steps[k].choices) {
      ASSERT_EQ(choice.action, Action::Defect);
    }
  }
}

TEST(Episode, SanctionsEscalateAndCapExcludedPlayers) {
  SimulationConfig c = small_config(StrategyKind::AlwaysCooperate, 10);
  c.mechanisms.base_audit_frequency = 1.0;
  c.params.p_detection = 1.0;
  c.strategy_overrides[0].kind = StrategyKind::AlwaysDefect;
  c.strategy_overrides[0].r_defect = 1.0;
  const Trajectory traj = run_episode(c, 6);
  EXPECT_EQ(traj.steps[1].state.sanctions[0].level, SanctionLevel::Warning);
  EXPECT_EQ(traj.steps[2].state.sanctions[0].level, SanctionLevel::Revoked);
  EXPECT_EQ(traj.steps[3].state.sanctions[0].level, SanctionLevel::Excluded);
  EXPECT_EQ(traj.steps[3].choices[0].resource, c.mechanisms.r_cap);
  EXPECT_EQ(traj.steps[2].choices[0].resource, 1.0);
}

TEST(Entry, ZeroRateNeverSpawns) {
  Parameters p;
  p.lambda_entry = 0.0;
  Rng rng{1};
  for (int t = 0; t < 1000; ++t) EXPECT_TRUE(spawn_entrants(rng, p, t, 3).empty());
}

TEST(Entry, MeanEntrantsOverLongEpisodes) {
  Parameters p;  // lambda_entry = 0.05
  const int episodes = 500, horizon = 1000;
  double total = 0;
  for (int e = 0; e < episodes; ++e) {
    Rng rng = derive_rng(episode_seed(123, e), streams::kEntry);
    for (int t = 0; t < horizon; ++t) {
      total += static_cast<double>(spawn_entrants(rng, p, t, 0).size());
    }
  }
  EXPECT_NEAR(total / episodes / 50.0, 1.0, 0.05);
}

TEST(Entry, IdsContinueFromFirstId) {
  Parameters p;
  p.lambda_entry = 5.0;
  Rng rng{2};
  const auto entrants = spawn_entrants(rng, p, 4, 10);
  for (std::size_t k = 0; k < entrants.size(); ++k) {
    EXPECT_EQ(index_of(entrants[k].player.id), 10 + k);
    EXPECT_EQ(entrants[k].player.entry_time, 4);
  }
}

TEST(Founders, ExplicitSpecsOverrideSampling) {
  SimulationConfig c = small_config(StrategyKind::AlwaysCooperate);
  c.founders = {{2.0, 0.5, 0.3}, {1.0, 0.8, 0.6}};
  c.params.n_initial = 2;
  Rng rng{1};
  const auto players = make_founders(c, rng);
  ASSERT_EQ(players.size(), 2u);
  EXPECT_EQ(players[1].compute, 1.0);
  EXPECT_EQ(players[1].expertise, 0.8);
  EXPECT_EQ(players[1].risk_tolerance, 0.6);
}

TEST(Founders, FrontierFounderHasFullExpertise) {
  SimulationConfig c = small_config(StrategyKind::AlwaysCooperate);
  c.params.frontier_founder = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng{s};
    EXPECT_EQ(make_founders(c, rng)[0].expertise, 1.0);
  }
}

TEST(Config, ValidationNamesBadField) {
  SimulationConfig c;
  c.episodes = 0;
  expect_error([&] { validate_config(c); }, ErrorCode::OutOfRange, "episodes");
  c = {};
  c.params.delta = 1.5;
  expect_error([&] { validate_config(c); }, ErrorCode::OutOfRange, "delta");
}

TEST(Estimate, SingleSampleIsDegenerate) {
  const std::vector<double> xs{4.5};
  const Estimate e = estimate(xs);
  EXPECT_EQ(e.mean, 4.5);
  EXPECT_EQ(e.variance, 0.0);
  EXPECT_EQ(e.ci_low, 4.5);
  EXPECT_EQ(e.ci_high, 4.5);
}

TEST(Estimate, HandComputedInterval) {
  const std::vector<double> xs{1, 2, 3, 4};
  const Estimate e = estimate(xs);
  EXPECT_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.variance, 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(e.half_width(), kZ95 * std::sqrt(5.0 / 12.0), 1e-12);
}

TEST(Ensemble, OneEpisodeMatchesThatEpisode) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 30);
  c.episodes = 1;
  const EnsembleStats stats = run_ensemble(c);
  const EpisodeSummary s = summarize(run_episode(c, episode_seed(c.seed, 0)), c);
  ASSERT_EQ(stats.founder_utility.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(stats.founder_utility[i].mean, s.discounted[i]);
    EXPECT_EQ(stats.founder_utility[i].ci_low, stats.founder_utility[i].ci_high);
  }
  EXPECT_EQ(stats.defection_rate.mean, s.defection_rate());
}

TEST(Ensemble, SummaryDiscountMatchesPayoffModule) {
  SimulationConfig c = small_config(StrategyKind::TitForTat, 80);
  c.params.lambda_entry = 0.1;
  const Trajectory traj = run_episode(c, 9);
  const EpisodeSummary s = summarize(traj, c);
  for (std::size_t i = 0; i < traj.final_state.size(); ++i) {
    if (i >= traj.steps.back().state.size()) continue;  // joined at the end
    EXPECT_TRUE(close(s.discounted[i],
                      discounted_utility(traj, PlayerId{static_cast<std::uint32_t>(i)},
                                         c.params),
                      1e-9));
  }
}

TEST(Ensemble, SchedulingAndThreadCountDoNotMatter) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 40);
  c.params.lambda_entry = 0.2;
  c.mechanisms.base_audit_frequency = 0.5;
  c.strategy_overrides[2].kind = StrategyKind::AlwaysDefect;
  c.episodes = 24;
  const EnsembleStats ref = run_ensemble(c);

  c.threads = 4;
  EXPECT_EQ(run_ensemble(c), ref);

  std::vector<std::size_t> order(c.episodes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng{5};
  for (int trial = 0; trial < 3; ++trial) {
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[rng.below(k)]);
    }
    const auto summaries = run_summaries(c, order);
    EXPECT_EQ(aggregate(summaries), ref);
  }
}

TEST(Ensemble, OrderMustBeAPermutation) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger);
  c.episodes = 3;
  const std::vector<std::size_t> bad{0, 0, 2};
  EXPECT_THROW(run_summaries(c, bad), Error);
}

TEST(Ensemble, DifferentMasterSeedsAgreeStatistically) {
  SimulationConfig c = small_config(StrategyKind::GrimTrigger, 50);
  c.params.lambda_entry = 0.1;
  c.mechanisms.base_audit_frequency = 0.5;
  c.strategy_overrides[0].kind = StrategyKind::AlwaysDefect;
  c.episodes = 400;
  c.seed = 1;
  const EnsembleStats a = run_ensemble(c);
  c.seed = 2;
  const EnsembleStats b = run_ensemble(c);
  EXPECT_NE(a.per_episode, b.per_episode);
  for (std::size_t i = 0; i < 3; ++i) {
    const Estimate& x = a.founder_utility[i];
    const Estimate& y = b.founder_utility[i];
    EXPECT_LE(std::max(x.ci_low, y.ci_low), std::min(x.ci_high, y.ci_high)) << i;
  }
}

TEST(Ensemble, FrequenciesAndIntervalsWellFormed) {
  SimulationConfig c = small_config(StrategyKind::RationalDefector, 30);
  c.episodes = 50;
  const EnsembleStats s = run_ensemble(c);
  EXPECT_GE(s.defection_frequency, 0.0);
  EXPECT_LE(s.defection_frequency, 1.0);
  EXPECT_LE(s.defection_rate.ci_low, s.defection_rate.ci_high);
  for (const auto& e : s.founder_utility) EXPECT_LE(e.ci_low, e.ci_high);
  EXPECT_EQ(s.per_episode.size(), 50u);
}
