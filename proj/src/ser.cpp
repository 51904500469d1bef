#include "darank/ser.hpp"

#include <array>
#include <cctype>

#include "darank/text.hpp"

namespace darank {

namespace {

struct Token {
  std::string word;
  bool clause_start = false;  // a clause delimiter precedes this token
};

bool is_clause_delim(char c) {
  return c == ',' || c == ';' || c == ':' || c == '.' || c == '!' || c == '?';
}

std::vector<Token> clause_tokens(std::string_view s) {
  std::vector<Token> out;
  std::string cur;
  bool pending_boundary = false;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({std::move(cur), pending_boundary});
      pending_boundary = false;
    }
    cur.clear();
  };
  for (char c : s) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc) || (std::ispunct(uc) && c != '\'')) {
      flush();
      if (is_clause_delim(c)) pending_boundary = true;
    } else {
      cur.push_back(static_cast<char>(std::tolower(uc)));
    }
  }
  flush();
  return out;
}

// Start positions of `needle` as a contiguous run of words in `hay`.
std::vector<std::size_t> occurrences(const std::vector<Token>& hay, const std::vector<std::string>& needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > hay.size()) return out;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < needle.size() && ok; ++j) ok = hay[i + j].word == needle[j];
    if (ok) out.push_back(i);
  }
  return out;
}

bool mentions(const std::vector<Token>& hay, std::string_view phrase) {
  return !occurrences(hay, text::match_tokens(phrase)).empty();
}

bool is_negation(const std::string& w) {
  static const std::array<std::string_view, 16> kNeg = {
      "no",     "not",   "without", "never",  "lacks",  "lack",  "isn't", "doesn't",
      "don't",  "aren't", "wasn't", "can't",  "cannot", "nor",   "won't", "hasn't",
  };
  for (auto n : kNeg) {
    if (w == n) return true;
  }
  return false;
}

constexpr std::size_t kNegationWindow = 3;

bool negated_at(const std::vector<Token>& toks, std::size_t start) {
  for (std::size_t back = 1; back <= kNegationWindow && back <= start; ++back) {
    // stepping over a clause boundary ends the scope
    if (toks[start - back + 1].clause_start) return false;
    if (is_negation(toks[start - back].word)) return true;
  }
  return false;
}

std::vector<std::string> realizations(const SlotInfo& info, const std::string& value) {
  std::vector<std::string> out{value};
  auto it = info.value_synonyms.find(value);
  if (it != info.value_synonyms.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  return out;
}

std::vector<std::string> phrases(const SlotInfo& info, const std::string& slot) {
  std::vector<std::string> out{info.phrase ? *info.phrase : humanize_slot(slot)};
  out.insert(out.end(), info.cues.begin(), info.cues.end());
  return out;
}

enum class SlotState { Realized, Missing, Incorrect };

SlotState categorical_state(const std::vector<Token>& toks, const Attribute& a, const SlotInfo& info) {
  for (const auto& r : realizations(info, a.value)) {
    if (mentions(toks, r)) return SlotState::Realized;
  }
  for (const auto& other : info.values) {
    if (other == a.value) continue;
    for (const auto& r : realizations(info, other)) {
      if (mentions(toks, r)) return SlotState::Incorrect;
    }
  }
  return SlotState::Missing;
}

SlotState phrase_state(const std::vector<Token>& toks, const Attribute& a, const SlotInfo& info) {
  bool seen = false;
  for (const auto& p : phrases(info, a.slot)) {
    for (std::size_t start : occurrences(toks, text::match_tokens(p))) {
      seen = true;
      const bool negated = negated_at(toks, start);
      switch (a.kind) {
        case AttributeKind::Categorical:  // valueless slot: polarity does not matter
          return SlotState::Realized;
        case AttributeKind::BooleanTrue:
          if (!negated) return SlotState::Realized;
          break;
        case AttributeKind::BooleanFalse:
          if (negated) return SlotState::Realized;
          break;
      }
    }
  }
  return seen ? SlotState::Incorrect : SlotState::Missing;
}

}  // namespace

SlotErrorReport score_ser(const MeaningRepresentation& mr, std::string_view text, const DomainOntology& ontology) {
  const auto toks = clause_tokens(text);
  SlotErrorReport report;
  static const SlotInfo kUnknown{};
  for (const auto& a : mr.attributes) {
    const SlotInfo* info = ontology.find_slot(a.slot);
    if (!info) info = &kUnknown;
    ++report.total_slots;
    SlotState state;
    if (a.is_boolean() || text::trim(a.value).empty()) {
      state = phrase_state(toks, a, *info);
    } else {
      state = categorical_state(toks, a, *info);
    }
    if (state == SlotState::Missing) report.missing.push_back(a.slot);
    if (state == SlotState::Incorrect) report.incorrect.push_back(a.slot);
  }
  report.ser = report.total_slots == 0
                   ? 0.0
                   : static_cast<double>(report.errors()) / static_cast<double>(report.total_slots);
  report.sacc = 1.0 - report.ser;
  return report;
}

}  // namespace darank
