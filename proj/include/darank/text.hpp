#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the parser, the metrics and the prompt renderer.
namespace darank::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view text, std::string_view prefix);
std::string capitalize_first(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Lowercases and splits on whitespace; every ASCII punctuation character
/// becomes a token of its own. Used by the BLEU and overlap metrics.
std::vector<std::string> metric_tokens(std::string_view s);

/// Lowercases, drops punctuation (treated as a separator) and splits on
/// whitespace. Used by slot matching, where "M (for Mature)" and
/// "M for Mature" must compare equal.
std::vector<std::string> match_tokens(std::string_view s);

}  // namespace darank::text
