#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace darank {

enum class Errc {
  UnknownDialogueAct,
  UnknownSlot,
  MalformedSyntax,
  DuplicateSlot,
  MissingStarter,
  MissingDefinition,
  InsufficientExamples,
  EndpointError,
  BudgetExceeded,
  FixtureMiss,
  ScorerUnavailable,
  EmptyPool,
  DegenerateVariance,
  IoError,
  ParseError,
  OntologyMismatch,
  ConfigError,
};

std::string_view to_string(Errc code);

/// Base exception for every failure raised by the library. `position` carries
/// a byte offset for syntax errors and a row number for corpus errors.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<std::size_t> position = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace darank
