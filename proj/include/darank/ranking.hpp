#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darank/scoring.hpp"

namespace darank {

enum class RankingFunction { RF1, RF2, RF2_DA, RF3, RF4, RF5 };

inline constexpr std::array<RankingFunction, 6> kAllRankingFunctions = {
    RankingFunction::RF1, RankingFunction::RF2, RankingFunction::RF2_DA,
    RankingFunction::RF3, RankingFunction::RF4, RankingFunction::RF5,
};

/// "rf1", "rf2", "rf2da", "rf3", "rf4", "rf5"
std::string_view to_string(RankingFunction rf);
RankingFunction parse_ranking_function(std::string_view id);

inline constexpr double kStageTolerance = 1e-9;

/// RF1 = DAC*SACC*P(S), RF2 = DAC*SACC*pBLEU*P(S), RF3 = DAC*pBBLEU*P(S),
/// RF4 = pBBLEU, RF5 = pBLEU, where DAC is the target-DA probability.
/// RF2_DA has no scalar form and is rejected with ConfigError.
double rf_scalar(const ScoreVector& v, RankingFunction rf);

/// Lexicographic RF2_DA ordering. Entry i is the candidate the four stages
/// pick among entries i..end: (1) label == target, else label == "other",
/// else everyone; (2) SACC within tolerance of the max; (3) pBLEU within
/// tolerance of the max; (4) highest fluency, then lowest gen_index.
std::vector<ScoredCandidate> rank_rf2da(std::vector<ScoredCandidate> pool, std::string_view target_da,
                                        double sacc_tolerance = kStageTolerance,
                                        double pbleu_tolerance = kStageTolerance);

struct RankedEntry {
  ScoredCandidate scored;
  std::optional<double> scalar;  // unset under RF2_DA
};

struct RankedPool {
  std::string item_id;
  std::string target_da;
  RankingFunction rf = RankingFunction::RF2_DA;
  std::vector<RankedEntry> entries;  // best first
  std::size_t selected = 0;

  const RankedEntry& best() const { return entries.at(selected); }
};

/// Sorts a pool best-first under `rf`; ties go to the lower gen_index, so the
/// result does not depend on input order. Throws EmptyPool.
RankedPool select_best(std::vector<ScoredCandidate> pool, RankingFunction rf, std::string_view target_da);

}  // namespace darank
