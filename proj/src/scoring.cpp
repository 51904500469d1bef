#include "darank/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "darank/bleu.hpp"
#include "darank/error.hpp"
#include "darank/text.hpp"
#include "httplib.h"
#include "json.hpp"

namespace darank {

using nlohmann::json;

ClassifyResult stub_classify(std::string_view text, const DomainOntology& ontology) {
  const std::string t = text::trim(text);
  std::string best = std::string(kOtherDa);
  std::size_t best_len = 0;
  auto consider = [&](const std::map<std::string, std::string>& table) {
    for (const auto& [da, starter] : table) {
      if (starter.size() > best_len && text::istarts_with(t, starter)) {
        best = da;
        best_len = starter.size();
      }
    }
  };
  consider(ontology.starters);
  consider(ontology.questions);

  ClassifyResult out;
  out.label = best;
  for (const auto& da : ontology.dialogue_acts) out.distribution[da] = da == best ? 1.0 : 0.0;
  return out;
}

FluencyResult stub_fluency(std::string_view text) {
  const auto words = text::split_whitespace(text::to_lower(text));
  FluencyResult out;
  out.token_count = words.size();
  if (words.empty()) return out;

  const std::set<std::string> distinct_words(words.begin(), words.end());
  const double word_ratio = static_cast<double>(distinct_words.size()) / static_cast<double>(words.size());

  const std::string joined = text::join(words, " ");
  double trigram_ratio = 1.0;
  if (joined.size() >= 3) {
    std::set<std::string> grams;
    const std::size_t total = joined.size() - 2;
    for (std::size_t i = 0; i < total; ++i) grams.insert(joined.substr(i, 3));
    trigram_ratio = static_cast<double>(grams.size()) / static_cast<double>(total);
  }
  out.mean_token_logprob =
      -(0.5 + 3.0 * (1.0 - word_ratio) + 2.0 * (1.0 - trigram_ratio) + 0.01 * static_cast<double>(words.size()));
  return out;
}

double token_f1(std::string_view text, std::string_view reference) {
  const auto a = text::metric_tokens(text);
  const auto b = text::metric_tokens(reference);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::map<std::string, std::size_t> ca, cb;
  for (const auto& t : a) ++ca[t];
  for (const auto& t : b) ++cb[t];
  std::size_t overlap = 0;
  for (const auto& [tok, n] : ca) {
    auto it = cb.find(tok);
    if (it != cb.end()) overlap += std::min(n, it->second);
  }
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(a.size());
  const double r = static_cast<double>(overlap) / static_cast<double>(b.size());
  return 2.0 * p * r / (p + r);
}

// ---- stub ---------------------------------------------------------------------

StubScorer::StubScorer(std::vector<DomainOntology> ontologies) : ontologies_(std::move(ontologies)) {}

ClassifyResult StubScorer::classify(std::string_view text, std::string_view domain) {
  for (const auto& o : ontologies_) {
    if (o.domain_name == domain) return stub_classify(text, o);
  }
  throw Error(Errc::ScorerUnavailable, "stub scorer does not serve domain '" + std::string(domain) + "'");
}

FluencyResult StubScorer::fluency(std::string_view text) { return stub_fluency(text); }

double StubScorer::similarity(std::string_view text, std::string_view reference) {
  return token_f1(text, reference);
}

HealthInfo StubScorer::health() {
  HealthInfo h;
  h.version = "1";
  h.mode = "stub";
  for (const auto& o : ontologies_) h.domains.push_back(o.domain_name);
  return h;
}

// ---- remote -------------------------------------------------------------------

RemoteScorer::RemoteScorer(RemoteScorerOptions options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw Error(Errc::ConfigError, "remote scorer needs a base URL");
}

std::string RemoteScorer::post(const std::string& path, const std::string& body) {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  auto res = client.Post(path, body, "application/json");
  if (!res) throw Error(Errc::ScorerUnavailable, options_.base_url + path + ": " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw Error(Errc::ScorerUnavailable, options_.base_url + path + " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

namespace {

template <typename F>
auto parse_response(const std::string& body, const char* what, F&& f) {
  try {
    return f(json::parse(body));
  } catch (const json::exception& e) {
    throw Error(Errc::ScorerUnavailable, std::string("malformed ") + what + " response: " + e.what());
  }
}

}  // namespace

ClassifyResult RemoteScorer::classify(std::string_view text, std::string_view domain) {
  const json req = {{"text", text}, {"domain", domain}};
  return parse_response(post("/classify", req.dump()), "/classify", [](const json& doc) {
    ClassifyResult out;
    out.label = doc.at("label").get<std::string>();
    out.distribution = doc.at("distribution").get<std::map<std::string, double>>();
    return out;
  });
}

FluencyResult RemoteScorer::fluency(std::string_view text) {
  const json req = {{"text", text}};
  return parse_response(post("/fluency", req.dump()), "/fluency", [](const json& doc) {
    FluencyResult out;
    out.mean_token_logprob = doc.at("mean_token_logprob").get<double>();
    out.token_count = doc.at("token_count").get<std::size_t>();
    return out;
  });
}

double RemoteScorer::similarity(std::string_view text, std::string_view reference) {
  const json req = {{"text", text}, {"reference", reference}};
  return parse_response(post("/similarity", req.dump()), "/similarity",
                        [](const json& doc) { return doc.at("score").get<double>(); });
}

HealthInfo RemoteScorer::health() {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  auto res = client.Get("/health");
  if (!res) throw Error(Errc::ScorerUnavailable, options_.base_url + "/health: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw Error(Errc::ScorerUnavailable, options_.base_url + "/health returned HTTP " + std::to_string(res->status));
  }
  return parse_response(res->body, "/health", [](const json& doc) {
    HealthInfo h;
    h.version = doc.at("version").get<std::string>();
    h.mode = doc.at("mode").get<std::string>();
    h.domains = doc.at("domains").get<std::vector<std::string>>();
    return h;
  });
}

// ---- per-candidate scores ---------------------------------------------------------

std::pair<std::string, double> score_dac(std::string_view candidate, std::string_view target_da, Scorer& scorer,
                                         std::string_view domain) {
  const ClassifyResult r = scorer.classify(candidate, domain);
  auto it = r.distribution.find(std::string(target_da));
  const double p = it == r.distribution.end() ? 0.0 : std::clamp(it->second, 0.0, 1.0);
  return {r.label, p};
}

double score_fluency(std::string_view candidate, Scorer& scorer) {
  if (text::trim(candidate).empty()) return kFluencyFloor;
  const FluencyResult r = scorer.fluency(candidate);
  if (r.token_count == 0 || !std::isfinite(r.mean_token_logprob)) return kFluencyFloor;
  return std::clamp(std::exp(r.mean_token_logprob), kFluencyFloor, 1.0);
}

double score_pbleu(std::string_view candidate, const PseudoReference& pseudo) {
  return bleu::sentence_bleu(candidate, pseudo.text);
}

double score_pbbleu(std::string_view candidate, const PseudoReference& pseudo, Scorer& scorer) {
  return std::clamp(scorer.similarity(candidate, pseudo.text), 0.0, 1.0);
}

std::vector<ScoredCandidate> assemble_scores(const MeaningRepresentation& mr, const std::vector<Candidate>& candidates,
                                             Scorer& scorer, const DomainOntology& ontology) {
  const PseudoReference pseudo = build_pseudo_reference(mr, ontology);
  std::vector<ScoredCandidate> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) {
    ScoredCandidate sc;
    sc.candidate = c;
    try {
      sc.slot_errors = score_ser(mr, c.text, ontology);
      auto [label, prob] = score_dac(c.text, mr.dialogue_act, scorer, ontology.domain_name);
      sc.scores.dac_label = std::move(label);
      sc.scores.dac_prob = prob;
      sc.scores.sacc = sc.slot_errors.sacc;
      sc.scores.pbleu = score_pbleu(c.text, pseudo);
      sc.scores.pbbleu = score_pbbleu(c.text, pseudo, scorer);
      sc.scores.fluency = score_fluency(c.text, scorer);
    } catch (const Error& e) {
      throw Error(e.code(), "candidate " + c.prompt_id + "#" + std::to_string(c.gen_index) + ": " + e.what());
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace darank
