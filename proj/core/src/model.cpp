#include "agisim/model.hpp"

#include <cmath>
#include <string>

#include "agisim/errors.hpp"

namespace agisim {

namespace {

void require(bool ok, const char* field, const std::string& detail = {}) {
  if (!ok) throw Error(ErrorCode::OutOfRange, field, detail);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool probability(double x) { return x >= 0.0 && x <= 1.0; }
bool unit_interval(const Interval& i) {
  return probability(i.lo) && probability(i.hi) && i.lo <= i.hi;
}

}  // namespace

std::string_view to_string(SanctionLevel level) {
  switch (level) {
    case SanctionLevel::None: return "none";
    case SanctionLevel::Warning: return "warning";
    case SanctionLevel::Revoked: return "revoked";
    case SanctionLevel::Excluded: return "excluded";
  }
  return "none";
}

SanctionLevel sanction_level_from_string(std::string_view name) {
  if (name == "none") return SanctionLevel::None;
  if (name == "warning") return SanctionLevel::Warning;
  if (name == "revoked") return SanctionLevel::Revoked;
  if (name == "excluded") return SanctionLevel::Excluded;
  throw Error(ErrorCode::ParseError, std::string(name), "unknown sanction level");
}

std::string_view to_string(Action action) {
  return action == Action::Cooperate ? "cooperate" : "defect";
}

const Parameters& validate_parameters(const Parameters& p) {
  require(finite_nonneg(p.alpha), "alpha");
  require(finite_nonneg(p.beta), "beta");
  require(finite_nonneg(p.gamma), "gamma");
  require(finite_nonneg(p.lambda_econ), "lambda_econ");
  require(finite_nonneg(p.mu), "mu");
  require(std::isfinite(p.phi) && p.phi > 0.0, "phi", "must be positive");
  require(finite_nonneg(p.sigma), "sigma");
  require(finite_nonneg(p.xi), "xi");
  require(finite_nonneg(p.eta), "eta");
  require(finite_nonneg(p.theta), "theta");
  require(p.delta > 0.0 && p.delta < 1.0, "delta", "must lie in (0, 1)");
  require(std::isfinite(p.mu_c), "mu_c");
  require(std::isfinite(p.sigma_c) && p.sigma_c > 0.0, "sigma_c",
          "must be positive");
  require(probability(p.p_audit), "p_audit");
  require(probability(p.p_detection), "p_detection");
  require(finite_nonneg(p.lambda_entry), "lambda_entry");
  require(finite_nonneg(p.t_bar), "t_bar");
  require(p.horizon >= 1, "horizon");
  require(p.n_initial >= 2, "n_initial");
  require(unit_interval(p.expertise), "expertise");
  require(unit_interval(p.risk_tolerance), "risk_tolerance");
  return p;
}

void validate_choice(const JointChoice& choice) {
  require(probability(choice.resource), "resource");
}

std::size_t GameState::position(PlayerId id) const {
  const auto idx = index_of(id);
  if (idx >= players.size() || players[idx].id != id) {
    throw Error(ErrorCode::UnknownPlayer, std::to_string(idx));
  }
  return idx;
}

void check_invariants(const GameState& s) {
  const auto n = s.players.size();
  require(s.capability.size() == n, "capability", "size mismatch");
  require(s.verified.size() == n, "verified", "size mismatch");
  require(s.sanctions.size() == n, "sanctions", "size mismatch");
  require(finite_nonneg(s.knowledge), "knowledge");
  require(finite_nonneg(s.security), "security");
  for (std::size_t i = 0; i < n; ++i) {
    require(index_of(s.players[i].id) == i, "players", "ids must be dense");
    require(finite_nonneg(s.capability[i]), "capability");
    require(s.verified[i] <= 1, "verified");
  }
}

Player sample_player(Rng& rng, const Parameters& params,
                     std::int64_t entry_time, PlayerId id) {
  Player p;
  p.id = id;
  p.entry_time = entry_time;
  p.compute = rng.lognormal(params.mu_c, params.sigma_c);
  p.expertise = rng.uniform(params.expertise.lo, params.expertise.hi);
  p.risk_tolerance =
      rng.uniform(params.risk_tolerance.lo, params.risk_tolerance.hi);
  return p;
}

Entrant sample_entrant(Rng& rng, const Parameters& params, std::int64_t t,
                       PlayerId id) {
  Entrant e;
  e.player = sample_player(rng, params, t, id);
  e.capability = rng.uniform(0.0, params.t_bar);
  return e;
}

GameState init_state(std::span<const Player> players, const Parameters&,
                     double initial_capability) {
  if (players.size() < 2) {
    throw Error(ErrorCode::TooFewPlayers, std::to_string(players.size()));
  }
  require(finite_nonneg(initial_capability), "initial_capability");
  GameState s;
  s.players.assign(players.begin(), players.end());
  s.capability.assign(players.size(), initial_capability);
  s.verified.assign(players.size(), 0);
  s.sanctions.assign(players.size(), SanctionState{});
  check_invariants(s);
  return s;
}

void admit(GameState& state, const Entrant& entrant) {
  if (index_of(entrant.player.id) != state.players.size()) {
    throw Error(ErrorCode::OutOfRange, "id", "entrant id must be next in sequence");
  }
  state.players.push_back(entrant.player);
  state.capability.push_back(entrant.capability);
  state.verified.push_back(0);
  SanctionState fresh;
  fresh.since = state.t;
  state.sanctions.push_back(fresh);
}

}  // namespace agisim
