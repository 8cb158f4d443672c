#include "agisim/errors.hpp"

namespace agisim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewPlayers: return "TooFewPlayers";
    case ErrorCode::MissingChoice: return "MissingChoice";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::UnknownPlayer: return "UnknownPlayer";
    case ErrorCode::PlayerAbsent: return "PlayerAbsent";
    case ErrorCode::EmptyPlan: return "EmptyPlan";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::InsufficientEpisodes: return "InsufficientEpisodes";
    case ErrorCode::TailBoundExceeded: return "TailBoundExceeded";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& subject,
                    const std::string& detail) {
  std::string msg{to_string(code)};
  msg += "(" + subject + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(compose(code, subject, detail)),
      code_(code),
      subject_(std::move(subject)) {}

}  // namespace agisim
