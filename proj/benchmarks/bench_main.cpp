#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "agisim/analysis.hpp"
#include "agisim/engine.hpp"
#include "agisim/mechanisms.hpp"
#include "agisim/payoff.hpp"

namespace {

using namespace agisim;

SimulationConfig episode_config(int players, int horizon) {
  SimulationConfig c;
  c.params.n_initial = players;
  c.params.horizon = horizon;
  c.default_strategy.kind = StrategyKind::GrimTrigger;
  c.episodes = 1;
  return c;
}

void BM_RunEpisode(benchmark::State& state) {
  const SimulationConfig c = episode_config(static_cast<int>(state.range(0)), 100);
  std::uint64_t ep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episode(c, episode_seed(c.seed, ep++)));
  }
  state.SetItemsProcessed(state.iterations() * c.params.horizon);
}
BENCHMARK(BM_RunEpisode)->Arg(3)->Arg(10)->Arg(50);

void BM_EnsembleSummaries(benchmark::State& state) {
  SimulationConfig c = episode_config(5, 100);
  c.episodes = 200;
  c.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_summaries(c));
  state.SetItemsProcessed(state.iterations() * c.episodes);
}
BENCHMARK(BM_EnsembleSummaries)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_StageUtility(benchmark::State& state) {
  Parameters p;
  std::vector<Player> players(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < players.size(); ++i) {
    players[i].id = PlayerId{static_cast<std::uint32_t>(i)};
  }
  const GameState g = init_state(players, p);
  const JointChoice choice{Action::Cooperate, 0.5, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stage_utility(g, PlayerId{0}, choice, p));
  }
}
BENCHMARK(BM_StageUtility)->Arg(3)->Arg(100);

void BM_CheckConditions(benchmark::State& state) {
  Parameters p;
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem1(p));
}
BENCHMARK(BM_CheckConditions);

void BM_CommitReveal(benchmark::State& state) {
  const std::vector<std::uint8_t> plan(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) {
    const Commitment c = commit_preregistration(plan, PlayerId{0}, 0);
    benchmark::DoNotOptimize(verify_commitment(c, plan));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_CommitReveal)->Arg(256)->Arg(1 << 16);

void BM_Supermodularity(benchmark::State& state) {
  Parameters p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(supermodularity_check(p, default_state_sampler(4), 1000, 1));
  }
}
BENCHMARK(BM_Supermodularity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
