#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agisim {

enum class ErrorCode {
  OutOfRange,
  TooFewPlayers,
  MissingChoice,
  KeyMismatch,
  UnknownPlayer,
  PlayerAbsent,
  EmptyPlan,
  InvalidTau,
  NegativeArgument,
  InsufficientEpisodes,
  TailBoundExceeded,
  IllegalTransition,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `subject()` names the offending
/// field, player or argument so callers can report it without parsing
/// `what()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace agisim
