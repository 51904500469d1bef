#include "darank/prompts.hpp"

#include <cctype>

#include "darank/error.hpp"
#include "darank/random.hpp"
#include "darank/text.hpp"

namespace darank {

std::string_view to_string(PromptStyle style) {
  switch (style) {
    case PromptStyle::TstVanilla: return "tst-vanilla";
    case PromptStyle::TstDialogue: return "tst-dialogue";
    case PromptStyle::TstParaphrase: return "tst-paraphrase";
    case PromptStyle::DefinitionalEach: return "definitional-each";
    case PromptStyle::DefinitionalTop: return "definitional-top";
    case PromptStyle::Paraphrase: return "paraphrase";
    case PromptStyle::Dialogic: return "dialogic";
    case PromptStyle::Pseudo: return "pseudo";
    case PromptStyle::S2S: return "s2s";
  }
  return "?";
}

PromptStyle parse_prompt_style(std::string_view id) {
  for (PromptStyle s : kAllPromptStyles) {
    if (to_string(s) == id) return s;
  }
  throw Error(Errc::ConfigError, "unknown prompt style '" + std::string(id) + "'");
}

bool is_tst(PromptStyle style) {
  return style == PromptStyle::TstVanilla || style == PromptStyle::TstDialogue ||
         style == PromptStyle::TstParaphrase;
}

std::string_view english_article(std::string_view word) {
  if (word.empty()) return "a";
  switch (std::tolower(static_cast<unsigned char>(word.front()))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

std::string s2s_line(const MeaningRepresentation& mr) {
  std::string out = mr.dialogue_act + " = yes";
  for (const auto& a : mr.attributes) out += " | " + a.slot + " = " + a.value;
  return out;
}

std::vector<Exemplar> sample_exemplars(std::span<const Exemplar> corpus, std::string_view da, std::size_t n,
                                       std::uint64_t seed) {
  std::vector<const Exemplar*> pool;
  for (const auto& e : corpus) {
    if (e.mr.dialogue_act == da) pool.push_back(&e);
  }
  if (pool.size() < n) {
    throw Error(Errc::InsufficientExamples, "need " + std::to_string(n) + " exemplars of '" + std::string(da) +
                                                "', corpus has " + std::to_string(pool.size()));
  }
  Rng rng(seed);
  std::vector<Exemplar> out;
  out.reserve(n);
  for (std::size_t i : rng.sample_indices(pool.size(), n)) out.push_back(*pool[i]);
  return out;
}

namespace {

// "I suggest" + "Worms: Reloaded Steam", skipping an empty side.
std::string space_join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

std::string da_words(std::string da) {
  for (char& c : da) {
    if (c == '_') c = ' ';
  }
  return da;
}

std::string paraphrase_starter(const std::string& da, const DomainOntology& ontology) {
  auto it = ontology.paraphrase_starters.find(da);
  if (it != ontology.paraphrase_starters.end()) return it->second;
  return starter_for(da, ontology, StarterForm::Declarative);
}

std::string definition_for(const std::string& da, const DomainOntology& ontology) {
  auto it = ontology.definitions.find(da);
  if (it == ontology.definitions.end()) throw Error(Errc::MissingDefinition, "no definition for '" + da + "'");
  return it->second;
}

// Renders one prompt item. `reference` is null for the target, in which case the
// item ends at the completion slot.
std::string render_item(PromptStyle style, const MeaningRepresentation& mr, const std::string* reference,
                        const DomainOntology& ontology) {
  const std::string& da = mr.dialogue_act;
  const std::string pseudo = build_pseudo_reference(mr, ontology).text;
  std::string head;
  switch (style) {
    case PromptStyle::TstVanilla:
      head = "Here is a text: \"" + pseudo + "\". Rewrite of the text, which is " +
             std::string(english_article(da)) + " " + da + " dialogue act: \"";
      return reference ? head + *reference + "\"" : head;
    case PromptStyle::TstDialogue:
      head = "Here is a text: \"" + pseudo + "\". Rewrite it to be " + std::string(english_article(da)) + " " + da +
             " dialogue act: \"";
      return reference ? head + *reference + "\"" : head;
    case PromptStyle::TstParaphrase:
      head = "Here is a text: \"" + space_join(starter_for(da, ontology, StarterForm::Declarative), pseudo) +
             "\". Paraphrase of the text: \"";
      return reference ? head + *reference + "\"" : head;
    case PromptStyle::DefinitionalEach:
    case PromptStyle::DefinitionalTop:
      head = "Data: " + s2s_line(mr) + ".\nData to Text for <" + da + ">: ";
      return reference ? head + *reference : head;
    case PromptStyle::Paraphrase:
      head = space_join(paraphrase_starter(da, ontology), pseudo) + ".\n";
      break;
    case PromptStyle::Dialogic:
      head = text::capitalize_first(space_join(starter_for(da, ontology, StarterForm::Question), pseudo)) + "?\n";
      break;
    case PromptStyle::Pseudo:
      head = space_join(text::capitalize_first(da_words(da)), pseudo) + ".\n";
      break;
    case PromptStyle::S2S:
      head = s2s_line(mr) + ".\n";
      break;
  }
  return reference ? head + *reference : head;
}

std::string definition_block(const std::string& da, const DomainOntology& ontology) {
  return "Description of <" + da + ">: " + definition_for(da, ontology) + " Generate diverse responses.\n\n\n";
}

}  // namespace

PromptSpec render_prompt(PromptStyle style, std::vector<Exemplar> exemplars, MeaningRepresentation target,
                         const DomainOntology& ontology) {
  const std::string& da = target.dialogue_act;
  for (const auto& e : exemplars) {
    if (e.mr.dialogue_act != da) {
      throw Error(Errc::ConfigError, "exemplar DA '" + e.mr.dialogue_act + "' differs from target DA '" + da + "'");
    }
    if (e.reference.empty()) throw Error(Errc::ConfigError, "exemplar with empty reference text");
  }

  std::string out;
  if (style == PromptStyle::DefinitionalTop) out += definition_block(da, ontology);
  for (const auto& e : exemplars) {
    if (style == PromptStyle::DefinitionalEach) out += definition_block(da, ontology);
    out += render_item(style, e.mr, &e.reference, ontology);
    out += "\n\n";
  }
  if (style == PromptStyle::DefinitionalEach && exemplars.empty()) out += definition_block(da, ontology);
  out += render_item(style, target, nullptr, ontology);

  PromptSpec spec;
  spec.style = style;
  spec.exemplars = std::move(exemplars);
  spec.target = std::move(target);
  spec.rendered = std::move(out);
  return spec;
}

std::vector<std::string> completion_stop_rules(PromptStyle style) {
  switch (style) {
    case PromptStyle::TstVanilla:
    case PromptStyle::TstDialogue:
    case PromptStyle::TstParaphrase:
      return {"\"", "Here is a text:"};
    case PromptStyle::DefinitionalEach:
      return {"\n", "Description of"};
    case PromptStyle::DefinitionalTop:
      return {"\n", "Data:"};
    case PromptStyle::Paraphrase:
    case PromptStyle::Dialogic:
    case PromptStyle::Pseudo:
    case PromptStyle::S2S:
      return {"\n"};
  }
  return {};
}

}  // namespace darank
