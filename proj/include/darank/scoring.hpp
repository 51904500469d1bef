#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "darank/generation.hpp"
#include "darank/mr.hpp"
#include "darank/ontology.hpp"
#include "darank/ser.hpp"

namespace darank {

inline constexpr double kFluencyFloor = 1e-9;

struct ScoreVector {
  std::string dac_label;  // argmax class
  double dac_prob = 0.0;  // probability of the target DA
  double sacc = 0.0;
  double pbleu = 0.0;
  double pbbleu = 0.0;
  double fluency = kFluencyFloor;

  bool operator==(const ScoreVector&) const = default;
};

struct ClassifyResult {
  std::string label;
  std::map<std::string, double> distribution;
};

struct FluencyResult {
  double mean_token_logprob = 0.0;
  std::size_t token_count = 0;
};

struct HealthInfo {
  std::string version;
  std::string mode;  // "stub" or "model"
  std::vector<std::string> domains;
};

/// DA classifier, language model and similarity model behind one interface.
/// Implementations must tolerate concurrent calls.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual ClassifyResult classify(std::string_view text, std::string_view domain) = 0;
  virtual FluencyResult fluency(std::string_view text) = 0;
  virtual double similarity(std::string_view text, std::string_view reference) = 0;
  virtual HealthInfo health() = 0;
};

// Deterministic stand-ins shared with the scorer service's stub mode.

/// Longest declarative or question starter of any DA that prefixes the text
/// (case-insensitive) gets probability 1; no match means "other".
ClassifyResult stub_classify(std::string_view text, const DomainOntology& ontology);
/// -(0.5 + 3(1 - distinct word ratio) + 2(1 - distinct char-trigram ratio) + 0.01 n)
FluencyResult stub_fluency(std::string_view text);
/// Token-level F1 over metric tokens (multiset overlap).
double token_f1(std::string_view text, std::string_view reference);

class StubScorer final : public Scorer {
 public:
  explicit StubScorer(std::vector<DomainOntology> ontologies);
  ClassifyResult classify(std::string_view text, std::string_view domain) override;
  FluencyResult fluency(std::string_view text) override;
  double similarity(std::string_view text, std::string_view reference) override;
  HealthInfo health() override;

 private:
  std::vector<DomainOntology> ontologies_;
};

struct RemoteScorerOptions {
  std::string base_url;  // scheme://host[:port]
  int timeout_seconds = 30;
};

/// Client for the scorer service: POST /classify, /fluency, /similarity and
/// GET /health with JSON bodies. Transport or HTTP failures raise ScorerUnavailable.
class RemoteScorer final : public Scorer {
 public:
  explicit RemoteScorer(RemoteScorerOptions options);
  ClassifyResult classify(std::string_view text, std::string_view domain) override;
  FluencyResult fluency(std::string_view text) override;
  double similarity(std::string_view text, std::string_view reference) override;
  HealthInfo health() override;

 private:
  std::string post(const std::string& path, const std::string& body);
  RemoteScorerOptions options_;
};

/// (argmax label, probability of target_da).
std::pair<std::string, double> score_dac(std::string_view candidate, std::string_view target_da, Scorer& scorer,
                                         std::string_view domain);
/// exp(mean token logprob), floored at kFluencyFloor for empty text.
double score_fluency(std::string_view candidate, Scorer& scorer);
double score_pbleu(std::string_view candidate, const PseudoReference& pseudo);
double score_pbbleu(std::string_view candidate, const PseudoReference& pseudo, Scorer& scorer);

struct ScoredCandidate {
  Candidate candidate;
  ScoreVector scores;
  SlotErrorReport slot_errors;
};

std::vector<ScoredCandidate> assemble_scores(const MeaningRepresentation& mr, const std::vector<Candidate>& candidates,
                                             Scorer& scorer, const DomainOntology& ontology);

}  // namespace darank
