#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "darank/ontology.hpp"

namespace darank {

enum class AttributeKind { Categorical, BooleanTrue, BooleanFalse };

struct Attribute {
  std::string slot;
  std::string value;  // canonical "yes"/"no" for boolean slots
  AttributeKind kind = AttributeKind::Categorical;

  bool is_boolean() const { return kind != AttributeKind::Categorical; }
  bool operator==(const Attribute&) const = default;
};

/// A dialogue act plus its ordered slot/value pairs, e.g.
/// `suggest(name[Worms: Reloaded], available_on_steam[yes])`.
struct MeaningRepresentation {
  std::string dialogue_act;
  std::vector<Attribute> attributes;

  const Attribute* find(std::string_view slot) const;
  bool operator==(const MeaningRepresentation&) const = default;
};

/// Parses `da(slot[value], ...)`. Values may contain any character; `]` and
/// `\` inside a value are escaped with a backslash. Whitespace inside values is
/// kept as written. Errors carry the byte offset of the offending character.
MeaningRepresentation parse_mr(std::string_view raw, const DomainOntology& ontology);

/// Canonical surface form; parse_mr(serialize_mr(mr)) == mr.
std::string serialize_mr(const MeaningRepresentation& mr);

struct PseudoReference {
  std::string text;
  MeaningRepresentation source_mr;
};

// Values are concatenated with single spaces in MR order. Parentheses are
// dropped from values ("M (for Mature)" -> "M for Mature"); boolean slots
// become their phrase, negated with "no " when false.
PseudoReference build_pseudo_reference(const MeaningRepresentation& mr, const DomainOntology& ontology);

/// Underscores to spaces with a leading "has_"/"is_" removed. Idempotent.
std::string humanize_slot(std::string_view slot);
/// Same, but the slot must exist in the ontology (throws UnknownSlot).
std::string humanize_slot(std::string_view slot, const DomainOntology& ontology);

/// The ontology phrase override for `slot` if present, else humanize_slot.
std::string slot_phrase(std::string_view slot, const DomainOntology& ontology);

enum class StarterForm { Declarative, Question };

std::string starter_for(std::string_view da, const DomainOntology& ontology, StarterForm form);

}  // namespace darank
