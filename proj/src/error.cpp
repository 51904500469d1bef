#include "darank/error.hpp"

namespace darank {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnknownDialogueAct: return "UnknownDialogueAct";
    case Errc::UnknownSlot: return "UnknownSlot";
    case Errc::MalformedSyntax: return "MalformedSyntax";
    case Errc::DuplicateSlot: return "DuplicateSlot";
    case Errc::MissingStarter: return "MissingStarter";
    case Errc::MissingDefinition: return "MissingDefinition";
    case Errc::InsufficientExamples: return "InsufficientExamples";
    case Errc::EndpointError: return "EndpointError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::FixtureMiss: return "FixtureMiss";
    case Errc::ScorerUnavailable: return "ScorerUnavailable";
    case Errc::EmptyPool: return "EmptyPool";
    case Errc::DegenerateVariance: return "DegenerateVariance";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::OntologyMismatch: return "OntologyMismatch";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      position_(position) {}

}  // namespace darank
