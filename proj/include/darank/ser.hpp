#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "darank/mr.hpp"
#include "darank/ontology.hpp"

namespace darank {

struct SlotErrorReport {
  std::size_t total_slots = 0;
  std::vector<std::string> missing;
  std::vector<std::string> incorrect;
  double ser = 0.0;
  double sacc = 1.0;

  std::size_t errors() const { return missing.size() + incorrect.size(); }
};

/// Heuristic slot matcher.
///
/// Text and values are compared as token sequences after case-folding and
/// dropping punctuation. A categorical slot is realized when its value (or an
/// ontology synonym of it) occurs contiguously; it is incorrect when instead
/// another known value of the same slot occurs, and missing otherwise.
/// Boolean and empty-valued slots look for the slot phrase or its cues; for
/// booleans a negation word up to 3 tokens before the phrase (not crossing
/// , ; : . ! ?) flips polarity, and a phrase found only with the wrong
/// polarity is incorrect. Hallucinated extra content is not counted.
SlotErrorReport score_ser(const MeaningRepresentation& mr, std::string_view text, const DomainOntology& ontology);

}  // namespace darank
