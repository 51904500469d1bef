#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "darank/corpus.hpp"
#include "darank/error.hpp"
#include "darank/evaluation.hpp"
#include "darank/generation.hpp"
#include "darank/prompts.hpp"
#include "darank/ranking.hpp"
#include "darank/scoring.hpp"

namespace darank {

struct GeneratorSettings {
  std::string kind = "mock";  // mock | replay | remote
  std::string fixtures;       // replay: fixture directory
  std::string record;         // remote: also write replay fixtures here
  std::string profile = "one-perfect";  // mock: profile source name
  RemoteOptions remote;
  std::size_t max_requests = 0;  // 0 = unlimited
};

struct ScorerSettings {
  std::string kind = "stub";  // stub | remote
  std::string url;
  bool allow_stub = false;  // accept a remote service that reports stub mode
};

/// Everything a run needs. Relative paths in the JSON file are resolved
/// against the file's directory.
struct RunConfig {
  std::string ontology_path;
  std::string train_path;
  std::string test_path;
  std::size_t per_da = 0;  // 0: use every test item
  PromptStyle style = PromptStyle::TstVanilla;
  std::size_t n_exemplars = 5;
  GenerationConfig generation;
  GeneratorSettings generator;
  ScorerSettings scorer;
  RankingFunction rf = RankingFunction::RF2_DA;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  std::size_t parallelism = 4;

  static RunConfig from_json_text(const std::string& json_text, const std::string& base_dir = ".");
  static RunConfig load(const std::string& path);

  /// Resolved configuration, compact JSON. The output directory is left out so
  /// that identical runs written to different places produce identical bytes.
  std::string to_json() const;
  /// Throws ConfigError (missing seed, bad values) or IoError (missing files).
  void validate() const;
};

/// One test item with its prompt and fully scored candidate pool.
struct RunItem {
  std::size_t index = 0;
  MeaningRepresentation mr;
  std::vector<std::string> references;
  std::string prompt_id;
  std::string prompt;
  std::vector<ScoredCandidate> pool;  // generation order
};

struct RunArtifact {
  std::string config_json;
  std::map<std::string, std::string> provenance;
  std::string domain;
  PromptStyle style = PromptStyle::TstVanilla;
  std::size_t n_exemplars = 0;
  RankingFunction rf = RankingFunction::RF2_DA;
  std::vector<RunItem> items;
};

struct RunResult {
  RunArtifact artifact;
  std::vector<RankedPool> ranked;
  EvaluationReport report;
};

std::unique_ptr<Generator> make_generator(const RunConfig& cfg, const DomainOntology& ontology);
std::unique_ptr<Scorer> make_scorer(const RunConfig& cfg, const DomainOntology& ontology);

/// Fails fast with ScorerUnavailable when the scorer cannot answer /health,
/// and with ConfigError when a remote service runs in stub mode without
/// allow_stub.
void preflight_scorer(const RunConfig& cfg, Scorer& scorer, const DomainOntology& ontology);

/// sample -> prompt -> generate -> score -> rank -> evaluate, writing
/// `<output_dir>/pools/<prompt id>.json` per item as it completes (reused on
/// the next run), then run.json, report.json and report.txt.
RunResult run_pipeline(const RunConfig& cfg);
RunResult run_pipeline(const RunConfig& cfg, Generator& generator, Scorer& scorer);

std::vector<RankedPool> rank_artifact(const RunArtifact& artifact, RankingFunction rf);
EvaluationReport evaluate_artifact(const RunArtifact& artifact, RankingFunction rf);

/// One report per ranking function over the artifact's stored pools. Never
/// generates or scores. Throws ConfigError for an empty list.
std::vector<EvaluationReport> compare_rfs(const RunArtifact& artifact, const std::vector<RankingFunction>& rfs);

std::string artifact_to_json(const RunArtifact& artifact, const std::vector<RankedPool>& ranked);
RunArtifact artifact_from_json(const std::string& json_text);
RunArtifact load_run_artifact(const std::string& path);

std::string report_id(const RunArtifact& artifact, RankingFunction rf);

/// Process exit code for an error: 2 config/input, 3 generation, 4 scoring,
/// 5 IO, 1 otherwise.
int exit_code_for(Errc code);

}  // namespace darank
