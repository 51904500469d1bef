#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darank/mr.hpp"
#include "darank/ranking.hpp"
#include "darank/scoring.hpp"

namespace darank {

/// Percentages in [0, 100].
struct MetricBlock {
  std::size_t n = 0;
  double perf = 0.0;
  double sacc = 0.0;
  double dac = 0.0;

  bool operator==(const MetricBlock&) const = default;
};

struct BeforeAfter {
  MetricBlock before;  // every candidate of every pool
  MetricBlock after;   // selected candidates only

  bool operator==(const BeforeAfter&) const = default;
};

struct EvaluationReport {
  std::string id;
  std::size_t n_items = 0;
  double perf = 0.0;
  double sacc_avg = 0.0;
  double dac = 0.0;
  std::optional<double> bleu;  // corpus BLEU-4 x 100 against human references
  std::map<std::string, MetricBlock> per_da;
  std::optional<BeforeAfter> before_after;
  std::string config_json;  // resolved run configuration, "" when not known
  std::map<std::string, std::string> provenance;  // file -> sha256

  bool operator==(const EvaluationReport&) const = default;
};

struct SelectedItem {
  MeaningRepresentation mr;
  ScoredCandidate selected;
  std::vector<std::string> references;  // may be empty
};

/// DA-correct and slot-error-free. "other" never counts as correct.
bool is_perfect(const ScoredCandidate& c, std::string_view target_da);

/// PERF, SACC and DAC over the selected outputs; BLEU over the items that
/// carry references, omitted when none do.
EvaluationReport evaluate_run(const std::vector<SelectedItem>& selected, std::string id = {});

BeforeAfter before_after(const std::vector<RankedPool>& pools);

struct PearsonResult {
  double r = 0.0;
  double p = 1.0;  // two-sided, Student t with n-2 degrees of freedom
};

/// Throws DegenerateVariance when either series is constant, ConfigError on
/// length mismatch or fewer than 3 points.
PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationRow {
  std::string metric;
  std::size_t n = 0;
  std::optional<PearsonResult> result;  // unset when a series is constant
};

using CorrelationTable = std::vector<CorrelationRow>;

/// Pearson correlation of SACC with pBLEU, pBBLEU and fluency over all candidates.
CorrelationTable correlate_with_sacc(const std::vector<RankedPool>& pools);

enum class ReportFormat { Json, Table };

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view json_text);

/// Fixed-width table with columns ID, N, PERF, SACC, DAC, BLEU.
std::string render_table(const std::vector<EvaluationReport>& rows);
std::string render_before_after(const std::vector<EvaluationReport>& rows);
std::string render_correlations(const CorrelationTable& table);

/// Writes `report` to `path`; throws IoError.
void emit_report(const EvaluationReport& report, ReportFormat format, const std::string& path);

}  // namespace darank
