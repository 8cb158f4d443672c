#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace agisim {

/// Graduated sanction ladder. Declaration order is the escalation order.
enum class SanctionLevel : std::uint8_t { None, Warning, Revoked, Excluded };

std::string_view to_string(SanctionLevel level);
SanctionLevel sanction_level_from_string(std::string_view name);

struct SanctionState {
  SanctionLevel level = SanctionLevel::None;
  /// Timestep at which `level` took effect.
  std::int64_t since = 0;
  /// Consecutive verified-compliant steps since the last level change.
  int redemption_counter = 0;
  /// Activation timesteps of escalations that are scheduled but not yet due.
  std::vector<std::int64_t> pending;

  bool operator==(const SanctionState&) const = default;
};

}  // namespace agisim
