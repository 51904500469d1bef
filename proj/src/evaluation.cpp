#include "darank/evaluation.hpp"

#include <fmt/format.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fstream>

#include "darank/bleu.hpp"
#include "darank/error.hpp"
#include "json.hpp"

namespace darank {

using nlohmann::json;

bool is_perfect(const ScoredCandidate& c, std::string_view target_da) {
  return c.scores.dac_label == target_da && c.slot_errors.errors() == 0;
}

namespace {

class Tally {
 public:
  void add(const ScoredCandidate& c, std::string_view target_da) {
    ++n_;
    perfect_ += is_perfect(c, target_da) ? 1 : 0;
    da_ok_ += c.scores.dac_label == target_da ? 1 : 0;
    sacc_sum_ += c.scores.sacc;
  }

  MetricBlock block() const {
    MetricBlock b;
    b.n = n_;
    if (n_ == 0) return b;
    const double n = static_cast<double>(n_);
    b.perf = 100.0 * static_cast<double>(perfect_) / n;
    b.dac = 100.0 * static_cast<double>(da_ok_) / n;
    b.sacc = 100.0 * sacc_sum_ / n;
    return b;
  }

 private:
  std::size_t n_ = 0;
  std::size_t perfect_ = 0;
  std::size_t da_ok_ = 0;
  double sacc_sum_ = 0.0;
};

}  // namespace

EvaluationReport evaluate_run(const std::vector<SelectedItem>& selected, std::string id) {
  EvaluationReport report;
  report.id = std::move(id);
  Tally all;
  std::map<std::string, Tally> per_da;
  bleu::CorpusBleu corpus;
  for (const auto& item : selected) {
    const std::string& da = item.mr.dialogue_act;
    all.add(item.selected, da);
    per_da[da].add(item.selected, da);
    if (!item.references.empty()) corpus.add(item.selected.candidate.text, item.references);
  }
  const MetricBlock b = all.block();
  report.n_items = b.n;
  report.perf = b.perf;
  report.sacc_avg = b.sacc;
  report.dac = b.dac;
  for (const auto& [da, t] : per_da) report.per_da.emplace(da, t.block());
  if (corpus.segments() > 0) report.bleu = 100.0 * corpus.score();
  return report;
}

BeforeAfter before_after(const std::vector<RankedPool>& pools) {
  Tally before;
  Tally after;
  for (const auto& pool : pools) {
    for (const auto& e : pool.entries) before.add(e.scored, pool.target_da);
    if (!pool.entries.empty()) after.add(pool.best().scored, pool.target_da);
  }
  return {before.block(), after.block()};
}

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::ConfigError, "pearson: series lengths differ");
  if (xs.size() < 3) throw Error(Errc::ConfigError, "pearson: need at least 3 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::DegenerateVariance, "pearson: a series has zero variance");

  PearsonResult out;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = n - 2.0;
  const double one_minus_r2 = 1.0 - out.r * out.r;
  if (one_minus_r2 <= 0.0) {
    out.p = 0.0;
  } else {
    const double t = std::abs(out.r) * std::sqrt(df / one_minus_r2);
    boost::math::students_t dist(df);
    out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  }
  return out;
}

CorrelationTable correlate_with_sacc(const std::vector<RankedPool>& pools) {
  std::vector<double> sacc, pbleu, pbbleu, fluency;
  for (const auto& pool : pools) {
    for (const auto& e : pool.entries) {
      sacc.push_back(e.scored.scores.sacc);
      pbleu.push_back(e.scored.scores.pbleu);
      pbbleu.push_back(e.scored.scores.pbbleu);
      fluency.push_back(e.scored.scores.fluency);
    }
  }
  CorrelationTable table;
  auto row = [&](const char* name, const std::vector<double>& series) {
    CorrelationRow r;
    r.metric = name;
    r.n = series.size();
    try {
      r.result = pearson(series, sacc);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateVariance && e.code() != Errc::ConfigError) throw;
    }
    table.push_back(std::move(r));
  };
  row("pbleu", pbleu);
  row("pbbleu", pbbleu);
  row("fluency", fluency);
  return table;
}

// ---- serialization ------------------------------------------------------------

namespace {

json block_json(const MetricBlock& b) { return {{"n", b.n}, {"perf", b.perf}, {"sacc", b.sacc}, {"dac", b.dac}}; }

MetricBlock block_from(const json& j) {
  MetricBlock b;
  b.n = j.at("n").get<std::size_t>();
  b.perf = j.at("perf").get<double>();
  b.sacc = j.at("sacc").get<double>();
  b.dac = j.at("dac").get<double>();
  return b;
}

}  // namespace

std::string report_to_json(const EvaluationReport& r) {
  json j;
  j["id"] = r.id;
  j["n_items"] = r.n_items;
  j["perf"] = r.perf;
  j["sacc"] = r.sacc_avg;
  j["dac"] = r.dac;
  j["bleu"] = r.bleu ? json(*r.bleu) : json(nullptr);
  json per_da = json::object();
  for (const auto& [da, b] : r.per_da) per_da[da] = block_json(b);
  j["per_da"] = per_da;
  if (r.before_after) {
    j["before_after"] = {{"before", block_json(r.before_after->before)}, {"after", block_json(r.before_after->after)}};
  } else {
    j["before_after"] = nullptr;
  }
  j["config"] = r.config_json.empty() ? json(nullptr) : json::parse(r.config_json);
  j["provenance"] = r.provenance;
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    EvaluationReport r;
    r.id = j.at("id").get<std::string>();
    r.n_items = j.at("n_items").get<std::size_t>();
    r.perf = j.at("perf").get<double>();
    r.sacc_avg = j.at("sacc").get<double>();
    r.dac = j.at("dac").get<double>();
    if (!j.at("bleu").is_null()) r.bleu = j.at("bleu").get<double>();
    for (const auto& [da, b] : j.at("per_da").items()) r.per_da.emplace(da, block_from(b));
    if (!j.at("before_after").is_null()) {
      r.before_after = BeforeAfter{block_from(j.at("before_after").at("before")),
                                   block_from(j.at("before_after").at("after"))};
    }
    if (!j.at("config").is_null()) r.config_json = j.at("config").dump();
    r.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("report: ") + e.what());
  }
}

std::string render_table(const std::vector<EvaluationReport>& rows) {
  std::size_t width = 2;
  for (const auto& r : rows) width = std::max(width, r.id.size());
  std::string out = fmt::format("{:<{}}  {:>6}  {:>7}  {:>7}  {:>7}  {:>7}\n", "ID", width, "N", "PERF", "SACC", "DAC",
                                "BLEU");
  for (const auto& r : rows) {
    const std::string bleu = r.bleu ? fmt::format("{:.2f}", *r.bleu) : std::string("-");
    out += fmt::format("{:<{}}  {:>6}  {:>7.2f}  {:>7.2f}  {:>7.2f}  {:>7}\n", r.id, width, r.n_items, r.perf,
                       r.sacc_avg, r.dac, bleu);
  }
  return out;
}

std::string render_before_after(const std::vector<EvaluationReport>& rows) {
  std::size_t width = 2;
  for (const auto& r : rows) width = std::max(width, r.id.size());
  std::string out = fmt::format("{:<{}}  {:>11}  {:>11}  {:>10}  {:>10}  {:>10}  {:>10}\n", "ID", width, "PERF before",
                                "PERF after", "SACC bef", "SACC aft", "DAC bef", "DAC aft");
  for (const auto& r : rows) {
    if (!r.before_after) continue;
    const auto& b = r.before_after->before;
    const auto& a = r.before_after->after;
    out += fmt::format("{:<{}}  {:>11.2f}  {:>11.2f}  {:>10.2f}  {:>10.2f}  {:>10.2f}  {:>10.2f}\n", r.id, width, b.perf,
                       a.perf, b.sacc, a.sacc, b.dac, a.dac);
  }
  return out;
}

std::string render_correlations(const CorrelationTable& table) {
  std::string out = fmt::format("{:<10}  {:>8}  {:>9}  {:>12}\n", "metric", "n", "pearson_r", "p_value");
  for (const auto& row : table) {
    if (row.result) {
      out += fmt::format("{:<10}  {:>8}  {:>9.4f}  {:>12.4e}\n", row.metric, row.n, row.result->r, row.result->p);
    } else {
      out += fmt::format("{:<10}  {:>8}  {:>9}  {:>12}\n", row.metric, row.n, "n/a", "n/a");
    }
  }
  return out;
}

void emit_report(const EvaluationReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  if (format == ReportFormat::Json) {
    out << report_to_json(report);
  } else {
    out << render_table({report});
    if (report.before_after) out << "\n" << render_before_after({report});
  }
  if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace darank
