#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace darank::bleu {

inline constexpr int kMaxOrder = 4;
inline constexpr double kSmoothingEpsilon = 0.1;

/// Smoothed sentence-level BLEU-4 against a single reference.
///
/// Precision of order n is m_n / t_n, with m_n replaced by `epsilon` when no
/// n-gram of that order matches. The geometric mean runs over orders
/// 1..min(4, |candidate|), so identical short strings still score 1.0.
/// Brevity penalty exp(1 - r/c) applies when the candidate is shorter.
/// An empty candidate scores 1.0 against an empty reference and 0.0 otherwise.
double sentence_bleu(std::span<const std::string> candidate, std::span<const std::string> reference,
                     double epsilon = kSmoothingEpsilon);

/// Tokenizes both sides with text::metric_tokens first.
double sentence_bleu(std::string_view candidate, std::string_view reference, double epsilon = kSmoothingEpsilon);

/// Unsmoothed corpus BLEU-4 with multiple references per segment (clipped
/// counts against the per-n-gram maximum over references, closest reference
/// length for the brevity penalty, shorter one on ties).
class CorpusBleu {
 public:
  void add(std::string_view hypothesis, const std::vector<std::string>& references);
  double score() const;
  std::size_t segments() const { return segments_; }

 private:
  std::array<std::size_t, kMaxOrder> matches_{};
  std::array<std::size_t, kMaxOrder> totals_{};
  std::size_t hyp_length_ = 0;
  std::size_t ref_length_ = 0;
  std::size_t segments_ = 0;
};

}  // namespace darank::bleu
