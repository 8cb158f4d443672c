#include <gtest/gtest.h>

#include "agisim/payoff.hpp"
#include "agisim/trajectory.hpp"
#include "test_util.hpp"

using namespace agisim;
using agisim::testing::close;
using agisim::testing::expect_error;
using agisim::testing::make_state;

namespace {

Parameters worked_example_params() {
  Parameters p;
  p.lambda_econ = 1;
  p.mu = 1;
  p.phi = 0.1;
  p.sigma = 1;
  p.xi = 0.5;
  p.eta = 2;
  p.theta = 1;
  return p;
}

Trajectory constant_trajectory(int steps, double theta_cost_only) {
  // Two players, all-zero state, V = 0: each stage utility is -theta.
  Trajectory traj;
  traj.founders = 2;
  for (int t = 0; t < steps; ++t) {
    StepRecord rec;
    rec.state = make_state({0, 0});
    rec.state.t = t;
    rec.choices.assign(2, JointChoice{});
    UtilityBreakdown u;
    u.total = theta_cost_only;
    rec.utilities.assign(2, u);
    traj.steps.push_back(rec);
  }
  traj.final_state = traj.steps.back().state;
  return traj;
}

}  // namespace

TEST(StageUtility, ZeroStateCostsTheta) {
  const GameState s = make_state({0, 0});
  Parameters p;
  p.theta = 0.7;
  const UtilityBreakdown u = stage_utility(s, PlayerId{0}, JointChoice{}, p);
  EXPECT_EQ(u.total, -0.7);
  EXPECT_EQ(u.economic, 0.0);
  EXPECT_EQ(u.security, 0.0);
  EXPECT_EQ(u.costs, 0.7);
}

TEST(StageUtility, HandEvaluatedExample) {
  GameState s = make_state({2, 1, 5}, 3.0, 4.0);
  s.verified = {1, 0, 0};
  const JointChoice c{Action::Cooperate, 0.5, true};
  const UtilityBreakdown u =
      stage_utility(s, PlayerId{0}, c, worked_example_params());
  EXPECT_NEAR(u.economic, 5.3, 1e-12);
  EXPECT_NEAR(u.security, 1.0, 1e-12);
  EXPECT_NEAR(u.costs, 0.5, 1e-12);
  EXPECT_NEAR(u.total, 5.8, 1e-12);
}

TEST(StageUtility, ClosedPoolDropsKnowledgeTerms) {
  GameState s = make_state({2, 1, 5}, 3.0, 4.0);
  s.verified = {1, 0, 0};
  const JointChoice c{Action::Cooperate, 0.5, true};
  const Parameters p = worked_example_params();
  const double open = stage_utility(s, PlayerId{0}, c, p, true).total;
  const double closed = stage_utility(s, PlayerId{0}, c, p, false).total;
  EXPECT_NEAR(open - closed, p.mu * 3.0 + p.phi * 3.0, 1e-12);
}

TEST(StageUtility, TotalIsSignedSumOfComponents) {
  Rng rng{31};
  for (int k = 0; k < 1000; ++k) {
    GameState s = make_state({rng.uniform(0, 9), rng.uniform(0, 9),
                              rng.uniform(0, 9)},
                             rng.uniform(0, 9), rng.uniform(0, 9));
    s.verified = {static_cast<std::uint8_t>(rng.below(2)), 0, 1};
    Parameters p;
    p.lambda_econ = rng.uniform(0, 3);
    p.xi = rng.uniform(0, 3);
    p.eta = rng.uniform(0, 3);
    const JointChoice c{Action::Cooperate, rng.uniform(), rng.bernoulli(0.5)};
    const UtilityBreakdown u = stage_utility(s, PlayerId{1}, c, p);
    ASSERT_TRUE(close(u.total, u.economic + u.security - u.costs, 1e-12));
  }
}

TEST(StageUtility, AffineInEachStateVariable) {
  GameState s = make_state({1.0, 2.0, 3.0}, 1.5, 2.5);
  const Parameters p = worked_example_params();
  const JointChoice c{Action::Cooperate, 0.4, true};
  auto u = [&](const GameState& st) {
    return stage_utility(st, PlayerId{0}, c, p).total;
  };
  const std::vector<std::function<void(GameState&, double)>> knobs = {
      [](GameState& g, double x) { g.capability[0] = x; },
      [](GameState& g, double x) { g.knowledge = x; },
      [](GameState& g, double x) { g.security = x; },
      [](GameState& g, double x) { g.capability[2] = x; },
  };
  for (const auto& set : knobs) {
    GameState a = s, b = s, m = s;
    set(a, 1.0);
    set(b, 5.0);
    set(m, 3.0);
    EXPECT_TRUE(close(u(m), 0.5 * (u(a) + u(b)), 1e-12));
  }
}

TEST(StageUtility, RivalCapabilityStrictlyHurts) {
  Parameters p;
  p.xi = 0.05;
  Rng rng{4};
  for (int k = 0; k < 200; ++k) {
    GameState s = make_state({rng.uniform(0, 5), rng.uniform(0, 5),
                              rng.uniform(0, 5)});
    const double before = stage_utility(s, PlayerId{0}, JointChoice{}, p).total;
    s.capability[1 + rng.below(2)] += rng.uniform(0.01, 2);
    EXPECT_LT(stage_utility(s, PlayerId{0}, JointChoice{}, p).total, before);
  }
}

TEST(StageUtility, ConcaveInResource) {
  const GameState s = make_state({1, 2}, 1, 1);
  Parameters p;
  p.eta = 0.8;
  for (double r = 0.0; r + 0.2 <= 1.0 + 1e-12; r += 0.1) {
    auto u = [&](double x) {
      return stage_utility(s, PlayerId{0}, JointChoice{Action::Cooperate, x, false},
                           p)
          .total;
    };
    EXPECT_LE(u(r) - 2 * u(r + 0.1) + u(r + 0.2), 1e-12);
  }
}

TEST(StageUtility, UnknownPlayerRejected) {
  const GameState s = make_state({1, 2});
  expect_error(
      [&] { stage_utility(s, PlayerId{5}, JointChoice{}, Parameters{}); },
      ErrorCode::UnknownPlayer);
}

TEST(Discounted, GeometricSum) {
  Parameters p;
  p.delta = 0.5;
  const Trajectory traj = constant_trajectory(3, 1.0);
  EXPECT_NEAR(discounted_utility(traj, PlayerId{0}, p), 1.75, 1e-12);
}

TEST(Discounted, SingleStepIsStageUtility) {
  Parameters p;
  p.delta = 1e-9;
  const Trajectory traj = constant_trajectory(1, -0.3);
  EXPECT_EQ(discounted_utility(traj, PlayerId{1}, p), -0.3);
}

TEST(Discounted, ZeroUtilitiesSumToZero) {
  const Trajectory traj = constant_trajectory(10, 0.0);
  EXPECT_EQ(discounted_utility(traj, PlayerId{0}, Parameters{}), 0.0);
}

TEST(Discounted, AbsentPlayerRejected) {
  const Trajectory traj = constant_trajectory(2, 1.0);
  expect_error([&] { discounted_utility(traj, PlayerId{9}, Parameters{}); },
               ErrorCode::PlayerAbsent);
}

TEST(TailBound, MatchesGeometricRemainder) {
  EXPECT_NEAR(truncation_tail_bound(0.5, 3, 2.0), 0.125 * 2.0 / 0.5, 1e-15);
  EXPECT_EQ(truncation_tail_bound(0.9, 10, 0.0), 0.0);
  // The bound really dominates the omitted tail of a constant stream.
  const double omitted = std::pow(0.9, 50) / (1 - 0.9);
  EXPECT_GE(truncation_tail_bound(0.9, 50, 1.0), omitted - 1e-15);
}
