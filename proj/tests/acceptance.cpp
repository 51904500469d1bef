// One PASS/FAIL line per primary acceptance criterion. Exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "darank/bleu.hpp"
#include "darank/evaluation.hpp"
#include "darank/mr.hpp"
#include "darank/pipeline.hpp"
#include "darank/prompts.hpp"
#include "darank/ser.hpp"
#include "darank/text.hpp"
#include "mutations.hpp"
#include "oracles.hpp"
#include "rank_grid.hpp"
#include "ser_cases.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace darank;
using namespace darank::testing;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome pseudo_reference_golden() {
  const auto mr = parse_mr(
      "give_opinion(name[Call of Duty: Advanced Warfare], rating[excellent], developer[Sledgehammer Games], "
      "esrb[M (for Mature)])",
      viggo());
  const std::string got = build_pseudo_reference(mr, viggo()).text;
  const std::string want = "Call of Duty: Advanced Warfare excellent Sledgehammer Games M for Mature";
  const std::string boolean =
      build_pseudo_reference(parse_mr("suggest(has_multiplayer[no])", viggo()), viggo()).text;
  return {got == want && boolean == "no multiplayer", "\"" + got + "\" / \"" + boolean + "\""};
}

Outcome prompt_goldens() {
  const Exemplar worms{parse_mr("suggest(name[Worms: Reloaded], available_on_steam[yes])", viggo()),
                       "I bet you like it when you can play games on Steam, like Worms: Reloaded, right?"};
  const auto target = parse_mr("suggest(name[Portal 2], has_multiplayer[no])", viggo());
  std::size_t matched = 0;
  std::string bad;
  for (auto style : kAllPromptStyles) {
    const std::string id(to_string(style));
    const auto spec = render_prompt(style, {worms}, target, viggo());
    if (spec.rendered == read_text(source_path("tests/fixtures/prompts/" + id + "_n1.txt"))) {
      ++matched;
    } else {
      bad += " " + id;
    }
  }
  const bool sentence = render_prompt(PromptStyle::TstDialogue, {worms}, target, viggo())
                            .rendered.find("Rewrite it to be a suggest dialogue act") != std::string::npos;
  return {matched == kAllPromptStyles.size() && sentence,
          fmt::format("{}/{} styles byte-identical{}", matched, kAllPromptStyles.size(),
                      bad.empty() ? "" : ", mismatched:" + bad)};
}

Outcome bleu_oracle() {
  Rng rng(2024);
  const std::vector<std::string> vocab = {"the", "cat", "sat", "on", "mat", "a", "dog", "game", "is", "fun"};
  double worst = 0.0;
  const int pairs = 200;
  for (int i = 0; i < pairs; ++i) {
    auto draw = [&] {
      std::vector<std::string> s(1 + rng.below(12));
      for (auto& w : s) w = vocab[rng.below(vocab.size())];
      return s;
    };
    const auto c = draw();
    const auto r = draw();
    const double got = bleu::sentence_bleu(text::join(c, " "), text::join(r, " "));
    worst = std::max(worst, std::abs(got - oracle::sentence_bleu(c, r)));
  }
  return {worst <= 1e-9, fmt::format("{} random pairs, max |diff| = {:.2e}", pairs, worst)};
}

Outcome ser_exactness() {
  std::size_t exact = 0;
  for (const auto& c : ser_cases()) {
    const auto mr = parse_mr(c.mr, viggo());
    const auto r = score_ser(mr, c.text, viggo());
    const double want = static_cast<double>(c.missing + c.incorrect) / static_cast<double>(mr.attributes.size());
    if (r.missing.size() == c.missing && r.incorrect.size() == c.incorrect && r.ser == want) ++exact;
  }
  const auto tally = ser_monotonicity(500, 77);
  return {exact == ser_cases().size() && ser_cases().size() >= 30 && tally.checks >= 500 && tally.violations == 0,
          fmt::format("{}/{} cases exact; {} deletions, {} SER decreases", exact, ser_cases().size(), tally.checks,
                      tally.violations)};
}

Outcome rf2da_oracle() {
  std::size_t pools = 0, mismatches = 0, stage1 = 0;
  auto check = [&](const std::vector<ScoredCandidate>& pool) {
    if (!rf2da_matches_oracle(pool)) ++mismatches;
    if (!stage1_holds(pool)) ++stage1;
  };
  const auto full = score_grid(false);
  for (std::size_t n = 1; n <= 3; ++n) pools += for_each_pool(full, n, check);
  pools += for_each_pool(score_grid(true), 4, check);
  Rng rng(99);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t n = 5 + rng.below(2);
    std::vector<ScoredCandidate> pool;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& g = full[rng.below(full.size())];
      pool.push_back(scored(g.label, g.sacc, g.pbleu, g.fluency, i));
    }
    check(pool);
    ++pools;
  }
  return {pools >= 10000 && mismatches == 0 && stage1 == 0,
          fmt::format("{} pools, {} oracle mismatches, {} stage-1 violations", pools, mismatches, stage1)};
}

// Scales one factor uniformly and checks the argmax does not move. Products
// are scaled by powers of two so the comparison is exact; single-factor
// functions get a non-linear strictly increasing map.
Outcome scalar_rfs() {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ScoreVector v;
    v.dac_prob = rng.unit();
    v.sacc = rng.unit();
    v.pbleu = rng.unit();
    v.pbbleu = rng.unit();
    v.fluency = rng.unit();
    worst = std::max(worst, std::abs(rf_scalar(v, RankingFunction::RF1) - v.dac_prob * v.sacc * v.fluency));
    worst = std::max(worst, std::abs(rf_scalar(v, RankingFunction::RF2) - v.dac_prob * v.sacc * v.pbleu * v.fluency));
    worst = std::max(worst, std::abs(rf_scalar(v, RankingFunction::RF3) - v.dac_prob * v.pbbleu * v.fluency));
  }

  using Field = double ScoreVector::*;
  const std::vector<std::pair<RankingFunction, std::vector<Field>>> factors = {
      {RankingFunction::RF1, {&ScoreVector::dac_prob, &ScoreVector::sacc, &ScoreVector::fluency}},
      {RankingFunction::RF2, {&ScoreVector::dac_prob, &ScoreVector::sacc, &ScoreVector::pbleu, &ScoreVector::fluency}},
      {RankingFunction::RF3, {&ScoreVector::dac_prob, &ScoreVector::pbbleu, &ScoreVector::fluency}},
      {RankingFunction::RF4, {&ScoreVector::pbbleu}},
      {RankingFunction::RF5, {&ScoreVector::pbleu}},
  };
  std::size_t pools = 0, moved = 0;
  for (int p = 0; p < 1000; ++p) {
    std::vector<ScoredCandidate> pool;
    const std::size_t n = 2 + rng.below(9);
    for (std::size_t i = 0; i < n; ++i) {
      // coarse grid so ties occur
      auto q = [&] { return (1.0 + static_cast<double>(rng.below(16))) / 16.0; };
      pool.push_back(scored("inform", q(), q(), q(), i, q(), q()));
    }
    ++pools;
    for (const auto& [rf, fields] : factors) {
      const std::size_t base = select_best(pool, rf, "inform").best().scored.candidate.gen_index;
      for (Field f : fields) {
        auto changed = pool;
        const double scale = std::ldexp(1.0, static_cast<int>(rng.below(9)) - 4);
        for (auto& c : changed) {
          double& x = c.scores.*f;
          x = fields.size() == 1 ? std::atan(3.0 * x) + x * x * x : x * scale;
        }
        if (select_best(changed, rf, "inform").best().scored.candidate.gen_index != base) ++moved;
      }
    }
  }
  return {worst <= 1e-12 && moved == 0,
          fmt::format("max product error {:.1e}; {} pools, {} argmax changes", worst, pools, moved)};
}

struct SyntheticRun {
  TempDir dir{"darank-accept"};
  RunConfig cfg;
};

void prepare(SyntheticRun& run, std::size_t test_per_da, const std::string& profile, std::uint64_t seed) {
  write_synthetic_corpus(run.dir.path(), 6, test_per_da, seed);
  run.cfg.ontology_path = source_path("data/ontologies/viggo.json");
  run.cfg.train_path = run.dir.str("train.csv");
  run.cfg.test_path = run.dir.str("test.csv");
  run.cfg.style = PromptStyle::TstDialogue;
  run.cfg.n_exemplars = 3;
  run.cfg.generation.k = 10;
  run.cfg.generator.kind = "mock";
  run.cfg.generator.profile = profile;
  run.cfg.rf = RankingFunction::RF2_DA;
  run.cfg.seed = seed;
  run.cfg.parallelism = 1;
}

Outcome end_to_end() {
  SyntheticRun run;
  prepare(run, 112, "one-perfect", 1);
  const auto result = run_pipeline(run.cfg);
  std::size_t below_mean = 0;
  for (const auto& pool : result.ranked) {
    double mean = 0;
    for (const auto& e : pool.entries) mean += e.scored.scores.sacc;
    mean /= static_cast<double>(pool.entries.size());
    if (pool.best().scored.scores.sacc < mean) ++below_mean;
  }
  const auto& ba = *result.report.before_after;
  const bool ok = result.ranked.size() >= 1000 && ba.after.perf == 100.0 &&
                  std::abs(ba.before.perf - 10.0) < 1e-9 && ba.after.sacc >= ba.before.sacc && below_mean == 0;
  return {ok, fmt::format("{} pools: PERF {:.2f} -> {:.2f}, SACC {:.2f} -> {:.2f}, {} pools where the pick is below "
                          "the pool mean SACC",
                          result.ranked.size(), ba.before.perf, ba.after.perf, ba.before.sacc, ba.after.sacc,
                          below_mean)};
}

Outcome rf_ordering() {
  SyntheticRun run;
  prepare(run, 40, "adversarial", 2);
  const auto result = run_pipeline(run.cfg);
  const auto rows = compare_rfs(result.artifact, {RankingFunction::RF2_DA, RankingFunction::RF1, RankingFunction::RF5});
  return {rows[0].perf >= rows[1].perf && rows[0].perf > rows[2].perf,
          fmt::format("PERF rf2da {:.2f}, rf1 {:.2f}, rf5 {:.2f}", rows[0].perf, rows[1].perf, rows[2].perf)};
}

Outcome pearson_checks() {
  const std::vector<double> xs = {0.5, 1, 2, 3.25, 4, 7};
  std::vector<double> up, down;
  for (double x : xs) {
    up.push_back(2 * x + 1);
    down.push_back(-x);
  }
  const double r_up = pearson(xs, up).r;
  const double r_down = pearson(xs, down).r;
  Rng rng(31);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(10), b(10);
    for (int i = 0; i < 10; ++i) {
      a[i] = rng.unit();
      b[i] = rng.unit();
    }
    worst = std::max(worst, std::abs(pearson(a, b).r - oracle::pearson_r(a, b)));
  }
  return {std::abs(r_up - 1.0) < 1e-12 && std::abs(r_down + 1.0) < 1e-12 && worst <= 1e-12,
          fmt::format("r = {:.15f} / {:.15f}; 200 random series, max |diff| = {:.1e}", r_up, r_down, worst)};
}

Outcome determinism() {
  SyntheticRun run;
  prepare(run, 5, "one-perfect", 3);
  run.cfg.generator.record = run.dir.str("fixtures");
  run.cfg.output_dir = run.dir.str("recorded");
  run_pipeline(run.cfg);

  auto replay = run.cfg;
  replay.generator = {};
  replay.generator.kind = "replay";
  replay.generator.fixtures = run.dir.str("fixtures");
  replay.parallelism = 4;
  replay.output_dir = run.dir.str("a");
  run_pipeline(replay);
  replay.output_dir = run.dir.str("b");
  run_pipeline(replay);
  std::string diff;
  for (const auto* f : {"run.json", "report.json", "report.txt"}) {
    const std::string a = read_text(run.dir.str(std::string("a/") + f));
    const std::string b = read_text(run.dir.str(std::string("b/") + f));
    if (a.empty() || a != b) diff += std::string(" ") + f;
  }
  return {diff.empty(), diff.empty() ? "run.json, report.json, report.txt identical across two replays"
                                     : "differing:" + diff};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"pseudo-reference golden", 1, pseudo_reference_golden},
      {"prompt golden renderings", 1, prompt_goldens},
      {"BLEU oracle equivalence", 5, bleu_oracle},
      {"SER exactness and monotonicity", 10, ser_exactness},
      {"RF2_DA oracle equivalence", 60, rf2da_oracle},
      {"scalar RF arithmetic and argmax invariance", 10, scalar_rfs},
      {"end-to-end synthetic experiment", 60, end_to_end},
      {"RF comparison on the adversarial suite", 60, rf_ordering},
      {"Pearson correctness", 1, pearson_checks},
      {"determinism under replay", 30, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs <= c.budget_s;
    if (!pass) ++failures;
    std::cout << fmt::format("{} [{:2}] {} ({:.2f}s / {:.0f}s): {}", pass ? "PASS" : "FAIL", i + 1, c.name, secs,
                             c.budget_s, o.detail)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failures, criteria.size()) << std::endl;
  return failures;
}
