#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace darank {

inline constexpr std::string_view kOtherDa = "other";

enum class SlotKind { Categorical, Boolean };

struct SlotInfo {
  SlotKind kind = SlotKind::Categorical;
  // Surface phrase for boolean and empty-valued slots; falls back to the
  // humanized slot name.
  std::optional<std::string> phrase;
  // Alternative phrases that count as mentioning the slot.
  std::vector<std::string> cues;
  // Known values of a categorical slot. A text realizing one of these instead
  // of the required value is an "incorrect" slot.
  std::vector<std::string> values;
  // value -> accepted realizations besides the value itself
  std::map<std::string, std::vector<std::string>> value_synonyms;
};

/// Per-domain data: dialogue acts, slots, sentence starters and definitions.
/// Loaded from a JSON document; the schema is described in README.md.
struct DomainOntology {
  std::string domain_name;
  std::vector<std::string> dialogue_acts;  // ordered; always contains "other"
  std::set<std::string> content_free;      // DAs whose MRs may have no attributes
  std::map<std::string, SlotInfo> slots;
  std::map<std::string, std::string> starters;             // d_r, e.g. "I suggest"
  std::map<std::string, std::string> questions;            // "can you suggest a game"
  std::map<std::string, std::string> paraphrase_starters;  // "I suggest a game"
  std::map<std::string, std::string> definitions;          // D^d

  bool has_da(std::string_view da) const;
  const SlotInfo* find_slot(std::string_view slot) const;

  static DomainOntology from_json_text(std::string_view json_text);
  static DomainOntology load(const std::string& path);
  std::string to_json_text() const;
};

}  // namespace darank
