#include "darank/ranking.hpp"

#include <algorithm>

#include "darank/error.hpp"

namespace darank {

std::string_view to_string(RankingFunction rf) {
  switch (rf) {
    case RankingFunction::RF1: return "rf1";
    case RankingFunction::RF2: return "rf2";
    case RankingFunction::RF2_DA: return "rf2da";
    case RankingFunction::RF3: return "rf3";
    case RankingFunction::RF4: return "rf4";
    case RankingFunction::RF5: return "rf5";
  }
  return "?";
}

RankingFunction parse_ranking_function(std::string_view id) {
  for (RankingFunction rf : kAllRankingFunctions) {
    if (to_string(rf) == id) return rf;
  }
  throw Error(Errc::ConfigError, "unknown ranking function '" + std::string(id) + "'");
}

double rf_scalar(const ScoreVector& v, RankingFunction rf) {
  switch (rf) {
    case RankingFunction::RF1: return v.dac_prob * v.sacc * v.fluency;
    case RankingFunction::RF2: return v.dac_prob * v.sacc * v.pbleu * v.fluency;
    case RankingFunction::RF3: return v.dac_prob * v.pbbleu * v.fluency;
    case RankingFunction::RF4: return v.pbbleu;
    case RankingFunction::RF5: return v.pbleu;
    case RankingFunction::RF2_DA: break;
  }
  throw Error(Errc::ConfigError, "rf2da is lexicographic and has no scalar value");
}

namespace {

using Indices = std::vector<std::size_t>;

Indices keep_max(const std::vector<ScoredCandidate>& pool, const Indices& in, double ScoreVector::*field,
                 double tolerance) {
  double best = pool[in.front()].scores.*field;
  for (std::size_t i : in) best = std::max(best, pool[i].scores.*field);
  Indices out;
  for (std::size_t i : in) {
    if (pool[i].scores.*field >= best - tolerance) out.push_back(i);
  }
  return out;
}

std::size_t rf2da_winner(const std::vector<ScoredCandidate>& pool, std::string_view target_da, double sacc_tol,
                         double pbleu_tol) {
  Indices stage;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].scores.dac_label == target_da) stage.push_back(i);
  }
  if (stage.empty()) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].scores.dac_label == kOtherDa) stage.push_back(i);
    }
  }
  if (stage.empty()) {
    for (std::size_t i = 0; i < pool.size(); ++i) stage.push_back(i);
  }
  stage = keep_max(pool, stage, &ScoreVector::sacc, sacc_tol);
  stage = keep_max(pool, stage, &ScoreVector::pbleu, pbleu_tol);

  std::size_t best = stage.front();
  for (std::size_t i : stage) {
    const auto& a = pool[i];
    const auto& b = pool[best];
    if (a.scores.fluency > b.scores.fluency ||
        (a.scores.fluency == b.scores.fluency && a.candidate.gen_index < b.candidate.gen_index)) {
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<ScoredCandidate> rank_rf2da(std::vector<ScoredCandidate> pool, std::string_view target_da,
                                        double sacc_tolerance, double pbleu_tolerance) {
  std::vector<ScoredCandidate> ordered;
  ordered.reserve(pool.size());
  while (!pool.empty()) {
    const std::size_t w = rf2da_winner(pool, target_da, sacc_tolerance, pbleu_tolerance);
    ordered.push_back(std::move(pool[w]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(w));
  }
  return ordered;
}

RankedPool select_best(std::vector<ScoredCandidate> pool, RankingFunction rf, std::string_view target_da) {
  if (pool.empty()) throw Error(Errc::EmptyPool, "cannot rank an empty candidate pool");
  RankedPool ranked;
  ranked.rf = rf;
  ranked.target_da = std::string(target_da);
  if (rf == RankingFunction::RF2_DA) {
    for (auto& sc : rank_rf2da(std::move(pool), target_da)) ranked.entries.push_back({std::move(sc), std::nullopt});
  } else {
    for (auto& sc : pool) {
      const double key = rf_scalar(sc.scores, rf);
      ranked.entries.push_back({std::move(sc), key});
    }
    std::stable_sort(ranked.entries.begin(), ranked.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
      if (*a.scalar != *b.scalar) return *a.scalar > *b.scalar;
      return a.scored.candidate.gen_index < b.scored.candidate.gen_index;
    });
  }
  ranked.selected = 0;
  return ranked;
}

}  // namespace darank
