#include "agisim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agisim/dynamics.hpp"
#include "agisim/errors.hpp"
#include "agisim/payoff.hpp"

namespace agisim {

ConditionReport check_theorem1(const Parameters& p) {
  ConditionReport r;

  // xi / mu with the conventions 0/0 = 0 and x/0 = +inf for x > 0.
  double xi_over_mu = 0.0;
  if (p.xi != 0.0) {
    xi_over_mu = p.mu == 0.0 ? std::numeric_limits<double>::infinity()
                             : p.xi / p.mu;
  }
  r.network_effects.margin = p.beta - (p.gamma + xi_over_mu);
  r.network_effects.holds = p.beta > p.gamma + xi_over_mu;

  r.theta_max = p.mu * p.beta / p.delta;
  r.verification_affordable.margin = r.theta_max - p.theta;
  r.verification_affordable.holds = p.theta <= r.theta_max;

  r.xi_min = p.lambda_econ * p.alpha / p.delta;
  r.punishment_credible.margin = p.xi - r.xi_min;
  r.punishment_credible.holds = p.xi >= r.xi_min;

  r.pi_cooperate = p.mu * p.beta;
  r.pi_defect = p.lambda_econ * p.alpha;
  r.pi_punishment = p.xi;

  const double denom = r.pi_defect - r.pi_punishment;
  if (denom != 0.0) r.folk_delta_min = (r.pi_defect - r.pi_cooperate) / denom;
  r.folk_degenerate = r.pi_defect <= r.pi_punishment;
  r.folk_loss_exceeds_gain = p.delta * (r.pi_cooperate - r.pi_punishment) >=
                             r.pi_defect - r.pi_cooperate;
  r.folk_satisfied = r.folk_degenerate ? r.folk_loss_exceeds_gain
                                       : p.delta >= *r.folk_delta_min;
  return r;
}

double defection_bound(double audit_frequency, double xi, double tau) {
  if (audit_frequency < 0.0) throw Error(ErrorCode::NegativeArgument, "audit_frequency");
  if (xi < 0.0) throw Error(ErrorCode::NegativeArgument, "xi");
  if (tau < 0.0) throw Error(ErrorCode::NegativeArgument, "tau");
  return 1.0 / (1.0 + audit_frequency * xi * tau);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NoProfitableDeviation: return "no_profitable_deviation";
    case Verdict::ProfitableDeviation: return "profitable_deviation";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DeviationReport deviation_test(const SimulationConfig& config,
                               std::size_t deviant,
                               const StrategySpec& deviation,
                               const DeviationOptions& options) {
  if (deviant >= static_cast<std::size_t>(config.params.n_initial)) {
    throw Error(ErrorCode::UnknownPlayer, std::to_string(deviant));
  }
  SimulationConfig deviating = config;
  deviating.strategy_overrides[deviant] = deviation;

  const auto base = run_summaries(config);
  const auto dev = run_summaries(deviating);

  std::vector<double> b, d, diff;
  b.reserve(base.size());
  d.reserve(base.size());
  diff.reserve(base.size());
  double tail = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    b.push_back(base[k].discounted[deviant]);
    d.push_back(dev[k].discounted[deviant]);
    diff.push_back(d.back() - b.back());
    tail = std::max({tail, base[k].tail_bound, dev[k].tail_bound});
  }

  DeviationReport r;
  r.deviation = std::string(to_string(deviation.kind));
  r.deviant = deviant;
  r.baseline = estimate(b);
  r.deviant_run = estimate(d);
  r.difference = estimate(diff);
  r.episodes = base.size();
  r.tail_bound = tail;

  const double scale =
      std::max({1.0, std::abs(r.baseline.mean), std::abs(r.deviant_run.mean)});
  if (tail > options.tail_tolerance * scale) {
    throw Error(ErrorCode::TailBoundExceeded, std::to_string(tail),
                "increase horizon or lower delta");
  }
  if (r.difference.half_width() > options.max_ci_half_width) {
    throw Error(ErrorCode::InsufficientEpisodes, std::to_string(r.episodes),
                "paired CI half-width " + std::to_string(r.difference.half_width()));
  }

  if (r.difference.ci_low > 0.0) {
    r.verdict = Verdict::ProfitableDeviation;
  } else if (r.difference.ci_high <= 0.0) {
    r.verdict = Verdict::NoProfitableDeviation;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

std::vector<DeviationCandidate> deviation_library(const StrategySpec& baseline,
                                                  std::int64_t defect_at) {
  StrategySpec always = baseline;
  always.kind = StrategyKind::AlwaysDefect;
  always.params.clear();

  StrategySpec once = baseline;
  once.kind = StrategyKind::DefectOnce;
  once.params["at"] = static_cast<double>(defect_at);

  StrategySpec sharing = always;
  sharing.params["share"] = 1.0;

  return {
      {"always_defect", always, false},
      {"defect_once", once, false},
      {"defect_share", sharing, true},
  };
}

DeviationReport run_deviation(const SimulationConfig& config,
                              std::size_t deviant,
                              const DeviationCandidate& candidate,
                              const DeviationOptions& options) {
  SimulationConfig cfg = config;
  if (candidate.decouple_secrecy) cfg.defect_implies_secrecy = false;
  DeviationReport r = deviation_test(cfg, deviant, candidate.spec, options);
  r.deviation = candidate.name;
  return r;
}

StateSampler default_state_sampler(std::size_t players) {
  return [players](Rng& rng) {
    SupermodularSample s;
    const Parameters defaults;
    for (std::size_t k = 0; k < players; ++k) {
      s.state.players.push_back(sample_player(
          rng, defaults, 0, PlayerId{static_cast<std::uint32_t>(k)}));
      s.state.capability.push_back(rng.uniform(0.0, 10.0));
      s.state.verified.push_back(rng.bernoulli(0.5) ? 1 : 0);
      s.state.sanctions.emplace_back();
      s.choices.push_back(
          {Action::Cooperate, rng.uniform(), rng.bernoulli(0.5)});
    }
    s.state.knowledge = rng.uniform(0.0, 10.0);
    s.state.security = step_security(s.state.capability, s.state.verified);
    s.i = static_cast<std::size_t>(rng.below(players));
    s.j = (s.i + 1 + static_cast<std::size_t>(rng.below(players - 1))) % players;
    return s;
  };
}

double two_period_value(const Parameters& params, const SupermodularSample& s,
                        bool share_i, bool share_j, std::uint64_t verify_seed) {
  std::vector<JointChoice> choices = s.choices;
  choices[s.i].share = share_i;
  choices[s.j].share = share_j;

  const PlayerId id = s.state.players[s.i].id;
  const double now = stage_utility(s.state, id, choices[s.i], params).total;

  AuditSelection everyone;
  for (const Player& p : s.state.players) everyone.players.push_back(p.id);
  Rng verify{verify_seed};
  const GameState next =
      transition(s.state, choices, everyone, verify, params);
  const double later = stage_utility(next, id, choices[s.i], params).total;
  return now + params.delta * later;
}

SupermodularityReport supermodularity_check(const Parameters& params,
                                            const StateSampler& sampler,
                                            std::size_t count,
                                            std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::OutOfRange, "count");
  Rng rng = derive_rng(seed, "supermodularity");
  SupermodularityReport r;
  r.samples = count;
  r.min_increasing_difference = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const SupermodularSample s = sampler(rng);
    const std::uint64_t vseed = rng.next_u64();
    const double w11 = two_period_value(params, s, true, true, vseed);
    const double w01 = two_period_value(params, s, false, true, vseed);
    const double w10 = two_period_value(params, s, true, false, vseed);
    const double w00 = two_period_value(params, s, false, false, vseed);
    const double diff = (w11 - w01) - (w10 - w00);
    const double closed =
        params.delta * params.phi * params.beta * s.state.capability[s.j];

    r.increasing_differences.push_back(diff);
    r.closed_form.push_back(closed);
    if (diff >= 0.0) ++r.nonnegative;
    r.min_increasing_difference = std::min(r.min_increasing_difference, diff);
    const double err = closed == 0.0 ? std::abs(diff)
                                     : std::abs(diff - closed) / std::abs(closed);
    r.max_relative_error = std::max(r.max_relative_error, err);
  }
  r.fraction_nonnegative =
      static_cast<double>(r.nonnegative) / static_cast<double>(count);
  return r;
}

DefectionRateReport empirical_defection_rate(const EnsembleStats& stats,
                                             const SimulationConfig& config) {
  DefectionRateReport r;
  r.rate = stats.defection_rate;
  r.pooled_rate = stats.defection_frequency;
  r.audit_frequency = effective_audit_frequency(config.mechanisms);
  r.xi = config.params.xi;
  r.tau = effective_tau(config.mechanisms);
  r.epsilon = defection_bound(r.audit_frequency, r.xi, r.tau);
  r.within_bound = r.rate.ci_high <= r.epsilon;
  return r;
}

}  // namespace agisim
