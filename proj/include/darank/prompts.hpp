#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darank/mr.hpp"
#include "darank/ontology.hpp"

namespace darank {

enum class PromptStyle {
  TstVanilla,
  TstDialogue,
  TstParaphrase,
  DefinitionalEach,
  DefinitionalTop,
  Paraphrase,
  Dialogic,
  Pseudo,
  S2S,
};

inline constexpr std::array<PromptStyle, 9> kAllPromptStyles = {
    PromptStyle::TstVanilla,       PromptStyle::TstDialogue,     PromptStyle::TstParaphrase,
    PromptStyle::DefinitionalEach, PromptStyle::DefinitionalTop, PromptStyle::Paraphrase,
    PromptStyle::Dialogic,         PromptStyle::Pseudo,          PromptStyle::S2S,
};

/// CLI identifier, e.g. "tst-vanilla", "definitional-each", "s2s".
std::string_view to_string(PromptStyle style);
PromptStyle parse_prompt_style(std::string_view id);
bool is_tst(PromptStyle style);

struct Exemplar {
  MeaningRepresentation mr;
  std::string reference;
};

struct PromptSpec {
  PromptStyle style = PromptStyle::TstVanilla;
  std::vector<Exemplar> exemplars;
  MeaningRepresentation target;
  std::string rendered;  // ends at the open completion slot
};

/// n distinct exemplars with dialogue act `da`, uniform without replacement.
/// Deterministic for a fixed seed, in draw order.
std::vector<Exemplar> sample_exemplars(std::span<const Exemplar> corpus, std::string_view da, std::size_t n,
                                       std::uint64_t seed);

PromptSpec render_prompt(PromptStyle style, std::vector<Exemplar> exemplars, MeaningRepresentation target,
                         const DomainOntology& ontology);

std::vector<std::string> completion_stop_rules(PromptStyle style);

/// Linearized MR: "suggest = yes | name = Worms: Reloaded | available_on_steam = yes".
std::string s2s_line(const MeaningRepresentation& mr);

/// "a" or "an" by the first letter of `word`.
std::string_view english_article(std::string_view word);

}  // namespace darank
