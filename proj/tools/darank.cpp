// darank: over-generate, score and rank dialogue-act-conditioned NLG outputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "darank/corpus.hpp"
#include "darank/error.hpp"
#include "darank/evaluation.hpp"
#include "darank/mr.hpp"
#include "darank/pipeline.hpp"
#include "darank/prompts.hpp"

using namespace darank;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << content;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "table") return ReportFormat::Table;
  throw Error(Errc::ConfigError, "unknown format '" + s + "'");
}

std::vector<RankingFunction> parse_rf_list(const std::vector<std::string>& ids) {
  std::vector<RankingFunction> out;
  if (ids.empty()) return {kAllRankingFunctions.begin(), kAllRankingFunctions.end()};
  for (const auto& id : ids) out.push_back(parse_ranking_function(id));
  return out;
}

struct RunFlags {
  std::string config;
  std::string ontology, train, test, out;
  std::optional<std::string> style, generator, fixtures, record, profile, rf, scorer_url;
  std::optional<std::size_t> k, per_da, n_exemplars, parallelism, max_requests;
  std::optional<double> temperature, top_p;
  std::optional<std::uint64_t> seed;
};

RunConfig build_config(const RunFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : RunConfig::load(f.config);
  if (!f.ontology.empty()) cfg.ontology_path = f.ontology;
  if (!f.train.empty()) cfg.train_path = f.train;
  if (!f.test.empty()) cfg.test_path = f.test;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (f.style) cfg.style = parse_prompt_style(*f.style);
  if (f.generator) {
    cfg.generator.kind = *f.generator;
    if (cfg.generator.kind == "remote" && cfg.generator.remote.base_url.empty()) {
      cfg.generator.remote = RemoteOptions::from_env();
    }
  }
  if (f.fixtures) cfg.generator.fixtures = *f.fixtures;
  if (f.record) cfg.generator.record = *f.record;
  if (f.profile) cfg.generator.profile = *f.profile;
  if (f.max_requests) cfg.generator.max_requests = *f.max_requests;
  if (f.rf) cfg.rf = parse_ranking_function(*f.rf);
  if (f.scorer_url) {
    cfg.scorer.kind = "remote";
    cfg.scorer.url = *f.scorer_url;
  }
  if (f.k) cfg.generation.k = *f.k;
  if (f.per_da) cfg.per_da = *f.per_da;
  if (f.n_exemplars) cfg.n_exemplars = *f.n_exemplars;
  if (f.parallelism) cfg.parallelism = *f.parallelism;
  if (f.temperature) cfg.generation.temperature = *f.temperature;
  if (f.top_p) cfg.generation.top_p = *f.top_p;
  if (f.seed) cfg.seed = *f.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Over-generate and rank dialogue-act-conditioned NLG outputs"};
  app.require_subcommand(1);

  // run
  RunFlags rf;
  auto* run = app.add_subcommand("run", "Generate, score, rank and evaluate a test set");
  run->add_option("--config", rf.config, "Run configuration (JSON)");
  run->add_option("--ontology", rf.ontology, "Domain ontology (JSON)");
  run->add_option("--train", rf.train, "Training corpus (CSV), exemplar source");
  run->add_option("--test", rf.test, "Test corpus (CSV)");
  run->add_option("--out", rf.out, "Output directory");
  run->add_option("--prompt-style", rf.style, "Prompt style");
  run->add_option("--k", rf.k, "Candidates per MR");
  run->add_option("--temperature", rf.temperature, "Sampling temperature");
  run->add_option("--top-p", rf.top_p, "Nucleus sampling mass");
  run->add_option("--generator", rf.generator, "remote | mock | replay")
      ->check(CLI::IsMember({"remote", "mock", "replay"}));
  run->add_option("--fixtures", rf.fixtures, "Replay fixture directory");
  run->add_option("--record", rf.record, "Write replay fixtures here");
  run->add_option("--profile", rf.profile, "Mock candidate profile");
  run->add_option("--max-requests", rf.max_requests, "Request cap (0 = none)");
  run->add_option("--rf", rf.rf, "rf1 | rf2 | rf2da | rf3 | rf4 | rf5");
  run->add_option("--scorer-url", rf.scorer_url, "Scorer service base URL");
  run->add_option("--per-da", rf.per_da, "Balanced test sample size per DA");
  run->add_option("--n-exemplars", rf.n_exemplars, "Exemplars per prompt");
  run->add_option("--parallelism", rf.parallelism, "Prompts in flight");
  run->add_option("--seed", rf.seed, "Random seed (required)");

  // eval
  std::string eval_run, eval_out, eval_format = "json";
  std::optional<std::string> eval_rf;
  auto* eval = app.add_subcommand("eval", "Re-rank a stored run and write its report");
  eval->add_option("--run", eval_run, "run.json")->required();
  eval->add_option("--out", eval_out, "Report path ('-' for stdout)")->required();
  eval->add_option("--rf", eval_rf, "Ranking function (default: the run's)");
  eval->add_option("--format", eval_format, "json | table");

  // compare-rfs
  std::string cmp_run, cmp_out;
  std::vector<std::string> cmp_rfs;
  auto* cmp = app.add_subcommand("compare-rfs", "Evaluate every ranking function over stored pools");
  cmp->add_option("--run", cmp_run, "run.json")->required();
  cmp->add_option("--rf", cmp_rfs, "Ranking functions (default: all)");
  cmp->add_option("--out", cmp_out, "Table path ('-' for stdout)");

  // correlate
  std::string cor_run, cor_out;
  auto* cor = app.add_subcommand("correlate", "Pearson correlation of SACC with pBLEU, pBBLEU and fluency");
  cor->add_option("--run", cor_run, "run.json")->required();
  cor->add_option("--out", cor_out, "Table path ('-' for stdout)");

  // prompts render
  std::string pr_ontology, pr_train, pr_mr, pr_style = "tst-vanilla";
  std::size_t pr_n = 5;
  std::uint64_t pr_seed = 0;
  auto* prompts = app.add_subcommand("prompts", "Prompt utilities");
  prompts->require_subcommand(1);
  auto* render = prompts->add_subcommand("render", "Render the prompt for one MR");
  render->add_option("--ontology", pr_ontology)->required();
  render->add_option("--train", pr_train, "Exemplar corpus")->required();
  render->add_option("--mr", pr_mr, "Target MR")->required();
  render->add_option("--prompt-style", pr_style);
  render->add_option("--n-exemplars", pr_n);
  render->add_option("--seed", pr_seed)->required();

  // corpus import
  std::string ci_format, ci_ontology, ci_in, ci_out;
  auto* corpus = app.add_subcommand("corpus", "Corpus utilities");
  corpus->require_subcommand(1);
  auto* import = corpus->add_subcommand("import", "Convert a released corpus to the canonical CSV");
  import->add_option("--format", ci_format)->required()->check(CLI::IsMember({"viggo", "rnnlg"}));
  import->add_option("--ontology", ci_ontology)->required();
  import->add_option("--in", ci_in)->required();
  import->add_option("--out", ci_out, "Output CSV ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const RunConfig cfg = build_config(rf);
      const RunResult result = run_pipeline(cfg);
      std::cout << render_table({result.report}) << "\n" << render_before_after({result.report});
    } else if (*eval) {
      const RunArtifact artifact = load_run_artifact(eval_run);
      const RankingFunction which = eval_rf ? parse_ranking_function(*eval_rf) : artifact.rf;
      const EvaluationReport report = evaluate_artifact(artifact, which);
      if (parse_format(eval_format) == ReportFormat::Json) {
        spill(eval_out, report_to_json(report));
      } else {
        spill(eval_out, render_table({report}));
      }
    } else if (*cmp) {
      const RunArtifact artifact = load_run_artifact(cmp_run);
      const auto reports = compare_rfs(artifact, parse_rf_list(cmp_rfs));
      spill(cmp_out, render_table(reports) + "\n" + render_before_after(reports));
    } else if (*cor) {
      const RunArtifact artifact = load_run_artifact(cor_run);
      spill(cor_out, render_correlations(correlate_with_sacc(rank_artifact(artifact, artifact.rf))));
    } else if (*render) {
      const auto ontology = DomainOntology::load(pr_ontology);
      const auto train = load_corpus(pr_train, ontology, Split::Train);
      const auto exemplars = to_exemplars(train);
      MeaningRepresentation target = parse_mr(pr_mr, ontology);
      auto ex = sample_exemplars(exemplars, target.dialogue_act, pr_n, pr_seed);
      std::cout << render_prompt(parse_prompt_style(pr_style), std::move(ex), std::move(target), ontology).rendered
                << "\n";
    } else if (*import) {
      const auto ontology = DomainOntology::load(ci_ontology);
      const std::string in = slurp(ci_in);
      spill(ci_out, ci_format == "viggo" ? import_viggo(in, ontology) : import_rnnlg(in, ontology));
    }
  } catch (const Error& e) {
    std::cerr << "darank: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "darank: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
