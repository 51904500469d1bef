#include "darank/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "darank/text.hpp"

namespace darank::bleu {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref) {
  std::size_t m = 0;
  for (const auto& [gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) m += std::min(count, it->second);
  }
  return m;
}

}  // namespace

double sentence_bleu(std::span<const std::string> candidate, std::span<const std::string> reference,
                     double epsilon) {
  const std::size_t c = candidate.size();
  const std::size_t r = reference.size();
  if (c == 0) return r == 0 ? 1.0 : 0.0;

  const std::size_t orders = std::min<std::size_t>(kMaxOrder, c);
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    const auto hyp = count_ngrams(candidate, n);
    const auto ref = count_ngrams(reference, n);
    const std::size_t total = c - n + 1;
    const std::size_t m = clipped_matches(hyp, ref);
    const double numerator = m > 0 ? static_cast<double>(m) : epsilon;
    log_sum += std::log(numerator / static_cast<double>(total));
  }
  const double bp = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return bp * std::exp(log_sum / static_cast<double>(orders));
}

double sentence_bleu(std::string_view candidate, std::string_view reference, double epsilon) {
  const auto c = text::metric_tokens(candidate);
  const auto r = text::metric_tokens(reference);
  return sentence_bleu(std::span<const std::string>(c), std::span<const std::string>(r), epsilon);
}

void CorpusBleu::add(std::string_view hypothesis, const std::vector<std::string>& references) {
  const auto hyp = text::metric_tokens(hypothesis);
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : references) refs.push_back(text::metric_tokens(r));

  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    const auto hyp_counts = count_ngrams(hyp, n);
    NgramCounts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, count] : count_ngrams(r, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    matches_[n - 1] += clipped_matches(hyp_counts, max_ref);
    totals_[n - 1] += hyp.size() >= n ? hyp.size() - n + 1 : 0;
  }

  std::size_t closest = 0;
  bool first = true;
  for (const auto& r : refs) {
    const auto diff = [&](std::size_t len) {
      return std::llabs(static_cast<long long>(len) - static_cast<long long>(hyp.size()));
    };
    if (first || diff(r.size()) < diff(closest) || (diff(r.size()) == diff(closest) && r.size() < closest)) {
      closest = r.size();
      first = false;
    }
  }
  hyp_length_ += hyp.size();
  ref_length_ += closest;
  ++segments_;
}

double CorpusBleu::score() const {
  if (hyp_length_ == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    if (matches_[n] == 0 || totals_[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches_[n]) / static_cast<double>(totals_[n]));
  }
  const double bp = hyp_length_ >= ref_length_
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref_length_) / static_cast<double>(hyp_length_));
  return bp * std::exp(log_sum / kMaxOrder);
}

}  // namespace darank::bleu
