#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "agisim/rng.hpp"
#include "agisim/sanction.hpp"

namespace agisim {

enum class PlayerId : std::uint32_t {};

constexpr std::uint32_t index_of(PlayerId id) noexcept {
  return static_cast<std::uint32_t>(id);
}

/// Closed interval used for the trait distributions.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool operator==(const Interval&) const = default;
};

/// Every coefficient of the development game in one record. Call
/// validate_parameters before handing it to anything else.
struct Parameters {
  double alpha = 0.1;        // capability growth coefficient
  double beta = 0.1;         // knowledge accumulation
  double gamma = 0.1;        // transparency bonus on own capability growth
  double lambda_econ = 0.1;  // economic weight on own capability
  double mu = 0.1;           // economic weight on shared knowledge
  double phi = 0.1;          // network multiplier on s_i * K
  double sigma = 0.1;        // weight on security stock
  double xi = 0.1;           // penalty weight on rivals' capability
  double eta = 0.1;          // quadratic resource cost
  double theta = 0.1;        // cost of being unverified
  double delta = 0.9;        // discount factor, open interval (0, 1)

  double mu_c = 0.0;     // log-normal compute location
  double sigma_c = 0.5;  // log-normal compute scale, > 0
  double p_audit = 0.8;
  double p_detection = 0.8;
  double lambda_entry = 0.05;
  double t_bar = 1.0;

  int horizon = 100;
  int n_initial = 3;

  /// Support of the uniform expertise and risk-tolerance draws.
  Interval expertise{0.0, 1.0};
  Interval risk_tolerance{0.0, 1.0};
  /// When set, founder 0 always has expertise 1 (the frontier lab).
  bool frontier_founder = false;

  bool operator==(const Parameters&) const = default;
};

/// Returns `raw` unchanged when every invariant holds; otherwise throws
/// Error(OutOfRange, field) for the first violated field in declaration order.
const Parameters& validate_parameters(const Parameters& raw);

struct Player {
  PlayerId id{};
  double compute = 1.0;         // c_i > 0
  double expertise = 0.0;       // e_i in [0, 1]
  double risk_tolerance = 0.0;  // rho_i in [0, 1]
  std::int64_t entry_time = 0;

  bool operator==(const Player&) const = default;
};

enum class Action : std::uint8_t { Cooperate, Defect };

std::string_view to_string(Action action);

struct JointChoice {
  Action action = Action::Cooperate;
  double resource = 0.0;  // r_i in [0, 1]
  bool share = false;     // s_i

  bool operator==(const JointChoice&) const = default;
};

void validate_choice(const JointChoice& choice);

/// Public and private state at one timestep. Per-player vectors are indexed
/// by position in `players`, and a player's position equals index_of(id):
/// players never leave, so ids stay dense.
struct GameState {
  std::int64_t t = 0;
  std::vector<Player> players;
  std::vector<double> capability;       // T_i(t)
  double knowledge = 0.0;               // K(t)
  std::vector<std::uint8_t> verified;   // V_i(t)
  double security = 0.0;                // S(t)
  std::vector<SanctionState> sanctions;

  std::size_t size() const noexcept { return players.size(); }
  /// Position of `id`; throws Error(UnknownPlayer) when absent.
  std::size_t position(PlayerId id) const;

  bool operator==(const GameState&) const = default;
};

/// Throws Error(OutOfRange, ...) naming the first broken state invariant.
void check_invariants(const GameState& state);

/// Log-normal compute, uniform expertise and risk tolerance. Consumes
/// exactly four draws (two for the normal, then expertise, then risk).
Player sample_player(Rng& rng, const Parameters& params,
                     std::int64_t entry_time, PlayerId id);

struct Entrant {
  Player player;
  double capability = 0.0;

  bool operator==(const Entrant&) const = default;
};

/// Traits as sample_player, then initial capability ~ Uniform(0, t_bar).
Entrant sample_entrant(Rng& rng, const Parameters& params, std::int64_t t,
                       PlayerId id);

/// t = 0, K = 0, S = 0, nobody verified or sanctioned; every founder starts
/// at `initial_capability`.
GameState init_state(std::span<const Player> players, const Parameters& params,
                     double initial_capability = 0.0);

/// Appends a player arriving with the given capability.
void admit(GameState& state, const Entrant& entrant);

}  // namespace agisim
