#include "agisim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "agisim/errors.hpp"
#include "agisim/payoff.hpp"

namespace agisim {

const StrategySpec& SimulationConfig::strategy_for(std::size_t position) const {
  const auto it = strategy_overrides.find(position);
  return it == strategy_overrides.end() ? default_strategy : it->second;
}

void validate_config(const SimulationConfig& c) {
  validate_parameters(c.params);
  validate_mechanisms(c.mechanisms);
  validate_strategy(c.default_strategy);
  for (const auto& [idx, spec] : c.strategy_overrides) {
    if (idx >= static_cast<std::size_t>(c.params.n_initial)) {
      throw Error(ErrorCode::UnknownPlayer, std::to_string(idx),
                  "strategy override for a non-existent founder");
    }
    validate_strategy(spec);
  }
  if (c.episodes < 1) throw Error(ErrorCode::OutOfRange, "episodes");
  if (!(c.initial_capability >= 0.0) || !std::isfinite(c.initial_capability)) {
    throw Error(ErrorCode::OutOfRange, "initial_capability");
  }
  if (!c.founders.empty() &&
      c.founders.size() != static_cast<std::size_t>(c.params.n_initial)) {
    throw Error(ErrorCode::OutOfRange, "founders",
                "count must equal n_initial");
  }
  for (const FounderSpec& f : c.founders) {
    if (!(f.compute > 0.0) || !std::isfinite(f.compute)) {
      throw Error(ErrorCode::OutOfRange, "founders.compute");
    }
    if (!(f.expertise >= 0.0 && f.expertise <= 1.0)) {
      throw Error(ErrorCode::OutOfRange, "founders.expertise");
    }
    if (!(f.risk_tolerance >= 0.0 && f.risk_tolerance <= 1.0)) {
      throw Error(ErrorCode::OutOfRange, "founders.risk_tolerance");
    }
  }
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(c.tiers.compute_fraction_min)) {
    throw Error(ErrorCode::OutOfRange, "compute_fraction_min");
  }
  if (!unit(c.tiers.capability_fraction_min)) {
    throw Error(ErrorCode::OutOfRange, "capability_fraction_min");
  }
}

std::vector<Entrant> spawn_entrants(Rng& rng, const Parameters& params,
                                    std::int64_t t, std::uint32_t first_id) {
  const auto count = rng.poisson(params.lambda_entry);
  std::vector<Entrant> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    out.push_back(sample_entrant(rng, params, t,
                                 PlayerId{first_id + static_cast<std::uint32_t>(k)}));
  }
  return out;
}

std::vector<Player> make_founders(const SimulationConfig& config, Rng& rng) {
  const auto n = static_cast<std::size_t>(config.params.n_initial);
  std::vector<Player> founders;
  founders.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PlayerId id{static_cast<std::uint32_t>(i)};
    if (config.founders.empty()) {
      founders.push_back(sample_player(rng, config.params, 0, id));
    } else {
      const FounderSpec& f = config.founders[i];
      founders.push_back(Player{id, f.compute, f.expertise, f.risk_tolerance, 0});
    }
  }
  if (config.params.frontier_founder) founders.front().expertise = 1.0;
  return founders;
}

Trajectory run_episode(const SimulationConfig& config, std::uint64_t seed) {
  const Parameters& params = config.params;
  const MechanismConfig& mech = config.mechanisms;

  Rng population = derive_rng(seed, streams::kPopulation);
  Rng strategy_rng = derive_rng(seed, streams::kStrategy);
  Rng audit_rng = derive_rng(seed, streams::kAudit);
  Rng verify_rng = derive_rng(seed, streams::kVerification);
  Rng detect_rng = derive_rng(seed, streams::kDetection);
  Rng entry_rng = derive_rng(seed, streams::kEntry);

  const auto founders = make_founders(config, population);
  GameState state = init_state(founders, params, config.initial_capability);
  PublicHistory history = PublicHistory::start(state);

  const double audit_frequency = effective_audit_frequency(mech);
  const double tau = effective_tau(mech);
  const auto milestones = milestone_schedule(mech.tau, params.horizon);

  Trajectory traj;
  traj.seed = seed;
  traj.founders = founders.size();
  traj.steps.reserve(static_cast<std::size_t>(params.horizon));
  double max_abs_utility = 0.0;

  for (int step = 0; step < params.horizon; ++step) {
    const std::size_t n = state.size();

    std::vector<JointChoice> requested(n);
    for (std::size_t i = 0; i < n; ++i) {
      DecisionContext ctx{&state, i, &params, audit_frequency, tau};
      JointChoice c = decide(config.strategy_for(i), history, ctx, strategy_rng);
      if (c.action == Action::Defect && config.defect_implies_secrecy) {
        c.share = false;
      }
      requested[i] = c;
    }

    SanctionedChoices effective;
    if (mech.sanctions_enabled) {
      effective = apply_sanctions(state, requested, mech);
    } else {
      effective.choices = std::move(requested);
      effective.pool_access.assign(n, 1);
    }

    AuditSelection audits = select_audit_targets(audit_rng, state.players,
                                                 audit_frequency);
    const auto audited = audits.mask(n);

    std::vector<DetectionOutcome> detections(n);
    for (std::size_t i = 0; i < n; ++i) {
      detections[i] = detect(state.players[i].id, effective.choices[i],
                             audited[i] != 0, detect_rng, params);
    }

    std::vector<UtilityBreakdown> utilities(n);
    for (std::size_t i = 0; i < n; ++i) {
      utilities[i] = stage_utility(state, state.players[i].id,
                                   effective.choices[i], params,
                                   effective.pool_access[i] != 0);
      max_abs_utility = std::max(max_abs_utility, std::abs(utilities[i].total));
    }

    GameState next = transition(state, effective.choices, audits, verify_rng,
                                params, config.security_timing);

    if (mech.sanctions_enabled) {
      for (std::size_t i = 0; i < n; ++i) {
        const bool violated = detections[i].flagged;
        const bool compliant = audited[i] && !violated && next.verified[i];
        next.sanctions[i] = advance_sanction(std::move(next.sanctions[i]),
                                             violated, compliant, state.t, mech);
      }
    }

    history = update_history(std::move(history), next.t, next.knowledge,
                             next.security, detections);

    for (const Entrant& e : spawn_entrants(entry_rng, params, next.t,
                                           static_cast<std::uint32_t>(next.size()))) {
      admit(next, e);
    }

    StepRecord rec;
    rec.milestone = std::binary_search(milestones.begin(), milestones.end(), state.t);
    rec.state = std::move(state);
    rec.choices = std::move(effective.choices);
    rec.audits = std::move(audits);
    rec.detections = std::move(detections);
    rec.utilities = std::move(utilities);
    traj.steps.push_back(std::move(rec));

    state = std::move(next);
  }

  traj.final_state = std::move(state);
  traj.tail_bound =
      truncation_tail_bound(params.delta, params.horizon, max_abs_utility);
  return traj;
}

double EpisodeSummary::defection_rate() const {
  return player_steps == 0 ? 0.0
                           : static_cast<double>(defect_steps) /
                                 static_cast<double>(player_steps);
}

EpisodeSummary summarize(const Trajectory& traj, const SimulationConfig& config) {
  EpisodeSummary s;
  s.seed = traj.seed;
  s.founders = traj.founders;
  s.tail_bound = traj.tail_bound;
  s.entrants = traj.final_state.size() - traj.founders;

  s.discounted.assign(traj.final_state.size(), 0.0);
  double weight = 1.0;  // delta^t, accumulated in step order
  for (const StepRecord& step : traj.steps) {
    for (std::size_t i = 0; i < step.utilities.size(); ++i) {
      s.discounted[i] += weight * step.utilities[i].total;
      ++s.player_steps;
      if (step.choices[i].action == Action::Defect) {
        ++s.defect_steps;
        if (step.detections[i].audited) ++s.audited_defections;
      }
      if (step.detections[i].flagged) ++s.detections;
    }
    weight *= config.params.delta;
  }

  for (const Player& p : traj.final_state.players) {
    const auto tier = classify_membership(traj.final_state, p.id, config.tiers);
    ++s.final_tiers[static_cast<std::size_t>(tier)];
  }
  return s;
}

Estimate estimate(std::span<const double> xs) {
  Estimate e;
  e.n = xs.size();
  if (xs.empty()) return e;
  e.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.variance = ss / static_cast<double>(e.n - 1);
  }
  const double half = kZ95 * std::sqrt(e.variance / static_cast<double>(e.n));
  e.ci_low = e.mean - half;
  e.ci_high = e.mean + half;
  return e;
}

EnsembleStats aggregate(std::span<const EpisodeSummary> summaries) {
  EnsembleStats st;
  st.episodes = summaries.size();
  st.per_episode.assign(summaries.begin(), summaries.end());
  if (summaries.empty()) return st;

  const std::size_t founders = summaries.front().founders;
  std::vector<std::vector<double>> founder_samples(founders);
  std::vector<double> entrant_samples, rates, detections, entrants;
  for (const EpisodeSummary& s : summaries) {
    for (std::size_t i = 0; i < s.discounted.size(); ++i) {
      if (i < founders) {
        founder_samples[i].push_back(s.discounted[i]);
      } else {
        entrant_samples.push_back(s.discounted[i]);
      }
    }
    rates.push_back(s.defection_rate());
    detections.push_back(static_cast<double>(s.detections));
    entrants.push_back(static_cast<double>(s.entrants));
    st.total_detections += s.detections;
    st.total_entrants += s.entrants;
    st.total_player_steps += s.player_steps;
    st.total_defect_steps += s.defect_steps;
    st.max_tail_bound = std::max(st.max_tail_bound, s.tail_bound);
    for (std::size_t k = 0; k < 3; ++k) st.final_tiers[k] += s.final_tiers[k];
  }
  for (const auto& xs : founder_samples) st.founder_utility.push_back(estimate(xs));
  st.entrant_utility = estimate(entrant_samples);
  st.defection_rate = estimate(rates);
  st.detections = estimate(detections);
  st.entrants = estimate(entrants);
  st.defection_frequency =
      st.total_player_steps == 0
          ? 0.0
          : static_cast<double>(st.total_defect_steps) /
                static_cast<double>(st.total_player_steps);
  return st;
}

namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested == 0 ? std::thread::hardware_concurrency() : requested;
  if (n == 0) n = 1;
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

}  // namespace

std::vector<EpisodeSummary> run_summaries(const SimulationConfig& config,
                                          std::span<const std::size_t> order) {
  validate_config(config);
  std::vector<std::uint8_t> seen(config.episodes, 0);
  for (std::size_t ep : order) {
    if (ep >= seen.size() || seen[ep]++) {
      throw Error(ErrorCode::OutOfRange, "order", "not a permutation of episodes");
    }
  }
  if (order.size() != config.episodes) {
    throw Error(ErrorCode::OutOfRange, "order", "not a permutation of episodes");
  }
  std::vector<EpisodeSummary> out(config.episodes);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= order.size()) return;
      const std::size_t ep = order[k];
      try {
        out[ep] = summarize(run_episode(config, episode_seed(config.seed, ep)),
                            config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned workers = worker_count(config.threads, order.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<EpisodeSummary> run_summaries(const SimulationConfig& config) {
  std::vector<std::size_t> order(config.episodes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return run_summaries(config, order);
}

EnsembleStats run_ensemble(const SimulationConfig& config) {
  const auto summaries = run_summaries(config);
  return aggregate(summaries);
}

}  // namespace agisim
