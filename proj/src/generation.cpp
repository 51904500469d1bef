#include "darank/generation.hpp"

#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "darank/error.hpp"
#include "darank/hash.hpp"
#include "darank/random.hpp"
#include "darank/text.hpp"
#include "httplib.h"
#include "json.hpp"

namespace darank {

using nlohmann::json;
namespace fs = std::filesystem;

void GenerationConfig::validate() const {
  if (k < 1) throw Error(Errc::ConfigError, "k must be >= 1");
  if (!(temperature > 0.0)) throw Error(Errc::ConfigError, "temperature must be > 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw Error(Errc::ConfigError, "top_p must be in (0, 1]");
  if (max_tokens < 1) throw Error(Errc::ConfigError, "max_tokens must be >= 1");
}

std::string CompletionRequest::canonical_json() const {
  json j;
  j["prompt"] = prompt;
  j["temperature"] = temperature;
  j["top_p"] = top_p;
  j["n"] = n;
  j["max_tokens"] = max_tokens;
  j["stop"] = stop;
  j["sample_index"] = sample_index;
  return j.dump();
}

std::string CompletionRequest::content_hash() const { return sha256_hex(canonical_json()); }

void RequestBudget::charge() {
  const std::size_t n = ++used_;
  if (max_ != 0 && n > max_) {
    throw Error(Errc::BudgetExceeded, "request cap of " + std::to_string(max_) + " reached");
  }
}

std::string truncate_completion(std::string_view raw, const std::vector<std::string>& stop) {
  std::size_t cut = raw.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    cut = std::min(cut, raw.find(s));
  }
  std::string out = text::trim(raw.substr(0, cut));
  if (!out.empty() && out.front() == '"') out.erase(0, 1);
  if (!out.empty() && out.back() == '"') out.pop_back();
  return text::trim(out);
}

std::string make_prompt_id(const PromptSpec& prompt, const GenerationConfig& cfg) {
  json j;
  j["style"] = std::string(to_string(prompt.style));
  j["rendered"] = prompt.rendered;
  j["k"] = cfg.k;
  j["temperature"] = cfg.temperature;
  j["top_p"] = cfg.top_p;
  j["max_tokens"] = cfg.max_tokens;
  j["stop"] = cfg.stop;
  return sha256_hex(j.dump()).substr(0, 16);
}

namespace {

std::vector<std::string> complete_with_retry(Generator& gen, const PromptSpec& prompt, const CompletionRequest& req,
                                             const GenerationConfig& cfg, RequestBudget* budget) {
  std::uint32_t delay = cfg.backoff_ms;
  for (std::size_t attempt = 0;; ++attempt) {
    if (budget) budget->charge();
    try {
      return gen.complete(prompt, req);
    } catch (const Error& e) {
      if (e.code() != Errc::EndpointError || attempt >= cfg.retries) throw;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    delay *= 2;
  }
}

}  // namespace

std::vector<Candidate> overgenerate(const PromptSpec& prompt, const GenerationConfig& cfg, Generator& generator,
                                    RequestBudget* budget) {
  cfg.validate();
  const std::vector<std::string> stop = cfg.stop.empty() ? completion_stop_rules(prompt.style) : cfg.stop;
  const std::string prompt_id = make_prompt_id(prompt, cfg);

  CompletionRequest base;
  base.prompt = prompt.rendered;
  base.temperature = cfg.temperature;
  base.top_p = cfg.top_p;
  base.max_tokens = cfg.max_tokens;
  base.stop = stop;

  std::vector<std::optional<std::string>> raws(cfg.k);
  if (generator.supports_n()) {
    CompletionRequest req = base;
    req.n = cfg.k;
    auto out = complete_with_retry(generator, prompt, req, cfg, budget);
    if (out.empty()) throw Error(Errc::EndpointError, "endpoint returned no completions for prompt " + prompt_id);
    for (std::size_t i = 0; i < cfg.k && i < out.size(); ++i) raws[i] = std::move(out[i]);
  } else {
    std::size_t ok = 0;
    std::exception_ptr last;
    for (std::size_t i = 0; i < cfg.k; ++i) {
      CompletionRequest req = base;
      req.n = 1;
      req.sample_index = i;
      try {
        auto out = complete_with_retry(generator, prompt, req, cfg, budget);
        if (!out.empty()) {
          raws[i] = std::move(out.front());
          ++ok;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::EndpointError) throw;
        last = std::current_exception();
      }
    }
    if (ok == 0) {
      if (last) std::rethrow_exception(last);
      throw Error(Errc::EndpointError, "endpoint returned no completions for prompt " + prompt_id);
    }
  }

  std::vector<Candidate> candidates;
  candidates.reserve(cfg.k);
  for (std::size_t i = 0; i < cfg.k; ++i) {
    Candidate c;
    c.prompt_id = prompt_id;
    c.gen_index = i;
    if (raws[i]) {
      c.raw = *raws[i];
      c.text = truncate_completion(c.raw, stop);
    } else {
      c.padded = true;
    }
    candidates.push_back(std::move(c));
  }
  return candidates;
}

std::vector<std::vector<Candidate>> overgenerate_batch(const std::vector<PromptSpec>& prompts,
                                                       const GenerationConfig& cfg, Generator& generator,
                                                       std::size_t parallelism, RequestBudget* budget) {
  std::vector<std::vector<Candidate>> results(prompts.size());
  std::vector<std::exception_ptr> errors(prompts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      try {
        results[i] = overgenerate(prompts[i], cfg, generator, budget);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t width = std::max<std::size_t>(1, std::min(parallelism, prompts.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < width; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// ---- mock ---------------------------------------------------------------------

CandidateProfile parse_candidate_profile(std::string_view spec) {
  CandidateProfile out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t plus = spec.find('+', start);
    if (plus == std::string_view::npos) plus = spec.size();
    const std::string item = text::trim(spec.substr(start, plus - start));
    start = plus + 1;
    Perturbation p;
    std::string name = item;
    const auto open = item.find('(');
    if (open != std::string::npos) {
      if (item.back() != ')') throw Error(Errc::ConfigError, "bad perturbation '" + item + "'");
      name = item.substr(0, open);
      p.arg = item.substr(open + 1, item.size() - open - 2);
    }
    if (name == "correct") p.kind = Perturbation::Kind::Correct;
    else if (name == "drop-slot") p.kind = Perturbation::Kind::DropSlot;
    else if (name == "wrong-da") p.kind = Perturbation::Kind::WrongDa;
    else if (name == "bare") p.kind = Perturbation::Kind::Bare;
    else if (name == "hallucinate") p.kind = Perturbation::Kind::Hallucinate;
    else if (name == "disfluent") p.kind = Perturbation::Kind::Disfluent;
    else throw Error(Errc::ConfigError, "unknown perturbation '" + item + "'");
    if ((p.kind == Perturbation::Kind::DropSlot || p.kind == Perturbation::Kind::Hallucinate) && p.arg.empty()) {
      throw Error(Errc::ConfigError, "perturbation '" + name + "' needs an argument");
    }
    out.push_back(std::move(p));
    if (plus == spec.size()) break;
  }
  return out;
}

std::string to_string(const CandidateProfile& profile) {
  std::string out;
  for (const auto& p : profile) {
    if (!out.empty()) out += "+";
    switch (p.kind) {
      case Perturbation::Kind::Correct: out += "correct"; break;
      case Perturbation::Kind::DropSlot: out += "drop-slot(" + p.arg + ")"; break;
      case Perturbation::Kind::WrongDa: out += "wrong-da"; break;
      case Perturbation::Kind::Bare: out += "bare"; break;
      case Perturbation::Kind::Hallucinate: out += "hallucinate(" + p.arg + ")"; break;
      case Perturbation::Kind::Disfluent: out += "disfluent"; break;
    }
  }
  return out.empty() ? "correct" : out;
}

namespace {

bool has(const CandidateProfile& profile, Perturbation::Kind kind) {
  for (const auto& p : profile) {
    if (p.kind == kind) return true;
  }
  return false;
}

// The next DA after `da` in ontology order that has a declarative starter.
std::string wrong_da_starter(const std::string& da, const DomainOntology& ontology) {
  const auto& das = ontology.dialogue_acts;
  const auto it = std::find(das.begin(), das.end(), da);
  const std::size_t base = it == das.end() ? 0 : static_cast<std::size_t>(it - das.begin());
  for (std::size_t step = 1; step <= das.size(); ++step) {
    const std::string& other = das[(base + step) % das.size()];
    if (other == da || other == kOtherDa) continue;
    auto s = ontology.starters.find(other);
    if (s != ontology.starters.end()) return s->second;
  }
  return {};
}

}  // namespace

std::string mock_realize(const MeaningRepresentation& mr, const DomainOntology& ontology,
                         const CandidateProfile& profile) {
  std::vector<std::string> parts;
  for (const auto& a : mr.attributes) {
    bool dropped = false;
    for (const auto& p : profile) {
      if (p.kind == Perturbation::Kind::DropSlot && p.arg == a.slot) dropped = true;
    }
    if (dropped) continue;
    switch (a.kind) {
      case AttributeKind::Categorical:
        parts.push_back(a.value.empty() ? slot_phrase(a.slot, ontology) : a.value);
        break;
      case AttributeKind::BooleanTrue:
        parts.push_back(slot_phrase(a.slot, ontology));
        break;
      case AttributeKind::BooleanFalse:
        parts.push_back("no " + slot_phrase(a.slot, ontology));
        break;
    }
  }
  for (const auto& p : profile) {
    if (p.kind == Perturbation::Kind::Hallucinate) parts.push_back(p.arg);
  }
  std::string body = text::join(parts, ", ");
  if (has(profile, Perturbation::Kind::Disfluent)) body += body.empty() ? "uh uh uh uh" : ", uh uh uh uh";

  std::string starter;
  if (has(profile, Perturbation::Kind::Bare)) {
    starter.clear();
  } else if (has(profile, Perturbation::Kind::WrongDa)) {
    starter = wrong_da_starter(mr.dialogue_act, ontology);
  } else {
    auto s = ontology.starters.find(mr.dialogue_act);
    if (s != ontology.starters.end()) starter = s->second;
  }
  std::string out = starter;
  if (!out.empty() && !body.empty()) out += " ";
  out += body;
  return out + ".";
}

std::vector<Candidate> mock_generate(const PromptSpec& prompt, const std::vector<CandidateProfile>& error_profile,
                                     const DomainOntology& ontology, const std::string& prompt_id) {
  const auto stop = completion_stop_rules(prompt.style);
  std::vector<Candidate> out;
  out.reserve(error_profile.size());
  for (std::size_t i = 0; i < error_profile.size(); ++i) {
    Candidate c;
    c.text = mock_realize(prompt.target, ontology, error_profile[i]);
    // continuation the way a model runs on into the next example
    c.raw = c.text + stop.front() + "\n\n" + (stop.size() > 1 ? stop.back() : std::string("Here is a text:")) +
            " more";
    c.prompt_id = prompt_id;
    c.gen_index = i;
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::vector<std::string> droppable_slots(const MeaningRepresentation& mr) {
  std::vector<std::string> out;
  for (const auto& a : mr.attributes) out.push_back(a.slot);
  return out;
}

const std::vector<std::string>& noise_phrases() {
  static const std::vector<std::string> kNoise = {"for sure", "with online co-op", "right now"};
  return kNoise;
}

}  // namespace

ProfileSource all_correct_profiles() {
  return [](const PromptSpec&, std::size_t k, std::uint64_t) {
    return std::vector<CandidateProfile>(k, CandidateProfile{});
  };
}

ProfileSource one_perfect_profiles() {
  return [](const PromptSpec& prompt, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    const auto slots = droppable_slots(prompt.target);
    std::vector<CandidateProfile> out(k);
    const std::size_t perfect = static_cast<std::size_t>(rng.below(k));
    for (std::size_t i = 0; i < k; ++i) {
      if (i == perfect) continue;
      CandidateProfile& p = out[i];
      p.push_back({rng.below(2) ? Perturbation::Kind::WrongDa : Perturbation::Kind::Bare, {}});
      if (!slots.empty() && rng.below(2)) p.push_back({Perturbation::Kind::DropSlot, slots[rng.below(slots.size())]});
      switch (rng.below(3)) {
        case 0: p.push_back({Perturbation::Kind::Disfluent, {}}); break;
        case 1: p.push_back({Perturbation::Kind::Hallucinate, noise_phrases()[rng.below(noise_phrases().size())]}); break;
        default: break;
      }
    }
    return out;
  };
}

ProfileSource adversarial_profiles() {
  return [](const PromptSpec& prompt, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    const auto slots = droppable_slots(prompt.target);
    std::vector<CandidateProfile> out(k);
    const std::size_t perfect = static_cast<std::size_t>(rng.below(k));
    out[perfect] = {{Perturbation::Kind::Disfluent, {}}};
    for (std::size_t i = 0; i < k; ++i) {
      if (i == perfect) continue;
      if (!slots.empty() && rng.below(4) == 0) {
        out[i] = {{Perturbation::Kind::DropSlot, slots[rng.below(slots.size())]}};
      } else {
        out[i] = {{Perturbation::Kind::Bare, {}}};
      }
    }
    return out;
  };
}

ProfileSource profiles_by_name(std::string_view name) {
  if (name == "all-correct") return all_correct_profiles();
  if (name == "one-perfect") return one_perfect_profiles();
  if (name == "adversarial") return adversarial_profiles();
  throw Error(Errc::ConfigError, "unknown mock profile '" + std::string(name) + "'");
}

MockGenerator::MockGenerator(DomainOntology ontology, ProfileSource source, std::uint64_t seed)
    : ontology_(std::move(ontology)), source_(std::move(source)), seed_(seed) {}

std::vector<std::string> MockGenerator::complete(const PromptSpec& prompt, const CompletionRequest& request) {
  const std::uint64_t prompt_seed = std::stoull(sha256_hex(prompt.rendered).substr(0, 15), nullptr, 16);
  const auto profiles = source_(prompt, request.n, derive_seed(seed_ ^ prompt_seed, request.sample_index));
  std::vector<std::string> out;
  for (const auto& c : mock_generate(prompt, profiles, ontology_)) out.push_back(c.raw);
  return out;
}

// ---- replay / record -------------------------------------------------------------

ReplayGenerator::ReplayGenerator(std::string fixture_dir) : dir_(std::move(fixture_dir)) {}

std::vector<std::string> ReplayGenerator::complete(const PromptSpec&, const CompletionRequest& request) {
  const std::string hash = request.content_hash();
  const fs::path path = fs::path(dir_) / (hash + ".json");
  std::ifstream in(path);
  if (!in) throw Error(Errc::FixtureMiss, "no replay fixture " + path.string());
  try {
    const json doc = json::parse(in);
    return doc.at("completions").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(Errc::IoError, "corrupt replay fixture " + path.string() + ": " + e.what());
  }
}

RecordingGenerator::RecordingGenerator(std::unique_ptr<Generator> inner, std::string fixture_dir)
    : inner_(std::move(inner)), dir_(std::move(fixture_dir)) {}

std::vector<std::string> RecordingGenerator::complete(const PromptSpec& prompt, const CompletionRequest& request) {
  auto out = inner_->complete(prompt, request);
  json doc;
  doc["request"] = json::parse(request.canonical_json());
  doc["completions"] = out;
  std::lock_guard lock(mu_);
  fs::create_directories(dir_);
  const fs::path path = fs::path(dir_) / (request.content_hash() + ".json");
  std::ofstream f(path);
  if (!f) throw Error(Errc::IoError, "cannot write fixture " + path.string());
  f << doc.dump(2) << "\n";
  return out;
}

// ---- remote ------------------------------------------------------------------------

RemoteOptions RemoteOptions::from_env() {
  RemoteOptions o;
  auto env = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  o.base_url = env("DARANK_LLM_URL");
  o.api_key = env("DARANK_LLM_API_KEY");
  o.model = env("DARANK_LLM_MODEL");
  if (auto p = env("DARANK_LLM_PATH"); !p.empty()) o.path = p;
  if (!env("DARANK_LLM_NO_N").empty()) o.supports_n = false;
  return o;
}

RemoteGenerator::RemoteGenerator(RemoteOptions options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw Error(Errc::ConfigError, "remote generator needs a base URL (DARANK_LLM_URL)");
}

std::vector<std::string> RemoteGenerator::complete(const PromptSpec&, const CompletionRequest& request) {
  json body;
  if (!options_.model.empty()) body["model"] = options_.model;
  body["prompt"] = request.prompt;
  body["temperature"] = request.temperature;
  body["top_p"] = request.top_p;
  body["n"] = request.n;
  body["max_tokens"] = request.max_tokens;
  if (!request.stop.empty()) body["stop"] = request.stop;

  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

  auto res = client.Post(options_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(Errc::EndpointError, options_.base_url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(Errc::EndpointError, options_.base_url + " returned HTTP " + std::to_string(res->status));
  }
  try {
    const json doc = json::parse(res->body);
    std::vector<std::string> out;
    for (const auto& choice : doc.at("choices")) {
      if (choice.contains("text")) {
        out.push_back(choice.at("text").get<std::string>());
      } else {
        out.push_back(choice.at("message").at("content").get<std::string>());
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(Errc::EndpointError, std::string("malformed completion response: ") + e.what());
  }
}

}  // namespace darank
