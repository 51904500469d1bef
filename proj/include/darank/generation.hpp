#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "darank/ontology.hpp"
#include "darank/prompts.hpp"

namespace darank {

struct Candidate {
  std::string text;  // raw truncated at the first stop sequence, trimmed
  std::string raw;
  std::string prompt_id;
  std::size_t gen_index = 0;
  bool padded = false;  // filler for a completion lost after retries

  bool operator==(const Candidate&) const = default;
};

struct GenerationConfig {
  std::size_t k = 10;
  double temperature = 0.7;
  double top_p = 1.0;
  std::size_t max_tokens = 120;
  std::vector<std::string> stop;  // empty: use the prompt style's rules
  std::size_t retries = 3;
  std::uint32_t backoff_ms = 250;  // doubled after each failed attempt

  void validate() const;
};

/// One request as sent to a binding. `sample_index` distinguishes the k
/// independent calls made when the endpoint has no n parameter.
struct CompletionRequest {
  std::string prompt;
  double temperature = 0.7;
  double top_p = 1.0;
  std::size_t n = 1;
  std::size_t max_tokens = 120;
  std::vector<std::string> stop;
  std::size_t sample_index = 0;

  std::string canonical_json() const;
  std::string content_hash() const;
};

/// A language-model binding. Implementations must be callable from several
/// threads at once.
class Generator {
 public:
  virtual ~Generator() = default;

  /// Raw completions for `request`; may return fewer than request.n.
  virtual std::vector<std::string> complete(const PromptSpec& prompt, const CompletionRequest& request) = 0;
  virtual bool supports_n() const { return true; }
  virtual std::string_view kind() const = 0;
};

/// Caps the number of requests a run may issue. Shared between threads.
class RequestBudget {
 public:
  explicit RequestBudget(std::size_t max_requests = 0) : max_(max_requests) {}
  void charge();  // throws BudgetExceeded
  std::size_t used() const { return used_.load(); }

 private:
  std::size_t max_;
  std::atomic<std::size_t> used_{0};
};

std::string truncate_completion(std::string_view raw, const std::vector<std::string>& stop);

std::string make_prompt_id(const PromptSpec& prompt, const GenerationConfig& cfg);

/// Exactly cfg.k candidates in generation order. Requests failing with
/// EndpointError are retried with exponential backoff; if some but not all
/// samples are lost the remainder is padded with flagged empty candidates.
std::vector<Candidate> overgenerate(const PromptSpec& prompt, const GenerationConfig& cfg, Generator& generator,
                                    RequestBudget* budget = nullptr);

/// overgenerate over a batch with at most `parallelism` prompts in flight;
/// result i belongs to prompts[i] regardless of completion order.
std::vector<std::vector<Candidate>> overgenerate_batch(const std::vector<PromptSpec>& prompts,
                                                       const GenerationConfig& cfg, Generator& generator,
                                                       std::size_t parallelism, RequestBudget* budget = nullptr);

// ---- mock generator ---------------------------------------------------------

struct Perturbation {
  enum class Kind { Correct, DropSlot, WrongDa, Bare, Hallucinate, Disfluent };
  Kind kind = Kind::Correct;
  std::string arg;  // slot name for DropSlot, phrase for Hallucinate

  bool operator==(const Perturbation&) const = default;
};

/// Perturbations applied together to one candidate.
using CandidateProfile = std::vector<Perturbation>;

/// Parses "correct", "drop-slot(rating)", "wrong-da", "bare",
/// "hallucinate(multiplayer)", "disfluent", joined with '+'.
CandidateProfile parse_candidate_profile(std::string_view spec);
std::string to_string(const CandidateProfile& profile);

/// Template realization of the target MR: starter, then the values joined by
/// ", ", then ".". Followed by the perturbations.
std::string mock_realize(const MeaningRepresentation& mr, const DomainOntology& ontology,
                         const CandidateProfile& profile);

/// One candidate per profile entry; raw completions carry the style's stop
/// sequence and a spurious continuation so truncation is exercised.
std::vector<Candidate> mock_generate(const PromptSpec& prompt, const std::vector<CandidateProfile>& error_profile,
                                     const DomainOntology& ontology, const std::string& prompt_id = {});

/// Decides the k profiles for a prompt. `seed` is already specific to the prompt.
using ProfileSource = std::function<std::vector<CandidateProfile>(const PromptSpec&, std::size_t k, std::uint64_t seed)>;

ProfileSource all_correct_profiles();
/// Exactly one Correct candidate at a random position; every other candidate
/// has a wrong DA or a dropped slot, optionally with extra noise.
ProfileSource one_perfect_profiles();
/// Like one_perfect_profiles, but the flawed candidates are mostly "bare"
/// pseudo-reference echoes, which maximize pBLEU while missing the DA.
ProfileSource adversarial_profiles();
ProfileSource profiles_by_name(std::string_view name);

class MockGenerator final : public Generator {
 public:
  MockGenerator(DomainOntology ontology, ProfileSource source, std::uint64_t seed);
  std::vector<std::string> complete(const PromptSpec& prompt, const CompletionRequest& request) override;
  std::string_view kind() const override { return "mock"; }

 private:
  DomainOntology ontology_;
  ProfileSource source_;
  std::uint64_t seed_;
};

/// Serves recorded completions from `<dir>/<request hash>.json`.
class ReplayGenerator final : public Generator {
 public:
  explicit ReplayGenerator(std::string fixture_dir);
  std::vector<std::string> complete(const PromptSpec& prompt, const CompletionRequest& request) override;
  std::string_view kind() const override { return "replay"; }

 private:
  std::string dir_;
};

/// Forwards to `inner` and writes every response as a replay fixture.
class RecordingGenerator final : public Generator {
 public:
  RecordingGenerator(std::unique_ptr<Generator> inner, std::string fixture_dir);
  std::vector<std::string> complete(const PromptSpec& prompt, const CompletionRequest& request) override;
  bool supports_n() const override { return inner_->supports_n(); }
  std::string_view kind() const override { return inner_->kind(); }

 private:
  std::unique_ptr<Generator> inner_;
  std::string dir_;
  std::mutex mu_;
};

struct RemoteOptions {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/completions";
  std::string api_key;
  std::string model;
  bool supports_n = true;
  int timeout_seconds = 60;

  /// DARANK_LLM_URL, DARANK_LLM_API_KEY, DARANK_LLM_MODEL, DARANK_LLM_PATH,
  /// DARANK_LLM_NO_N.
  static RemoteOptions from_env();
};

/// Completions-style HTTP(S) endpoint: POST {prompt, temperature, top_p, n,
/// stop, max_tokens, model} and read choices[].text.
class RemoteGenerator final : public Generator {
 public:
  explicit RemoteGenerator(RemoteOptions options);
  std::vector<std::string> complete(const PromptSpec& prompt, const CompletionRequest& request) override;
  bool supports_n() const override { return options_.supports_n; }
  std::string_view kind() const override { return "remote"; }

 private:
  RemoteOptions options_;
};

}  // namespace darank
