#include "darank/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "darank/error.hpp"
#include "darank/hash.hpp"
#include "darank/random.hpp"
#include "json.hpp"

namespace darank {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(Errc::IoError, "short write to " + path.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoError, "cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string resolve(const std::string& p, const std::string& base) {
  if (p.empty()) return p;
  const fs::path path(p);
  if (path.is_absolute()) return p;
  return (fs::path(base) / path).lexically_normal().string();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(Errc::ConfigError, fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

}  // namespace

// ---- configuration ------------------------------------------------------------

RunConfig RunConfig::from_json_text(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::ConfigError, "config must be a JSON object");
  RunConfig cfg;
  try {
    reject_unknown(j,
                   {"ontology", "train", "test", "per_da", "prompt_style", "n_exemplars", "generation", "generator",
                    "scorer", "rf", "seed", "output_dir", "parallelism"},
                   "config");
    cfg.ontology_path = resolve(get_or<std::string>(j, "ontology", ""), base_dir);
    cfg.train_path = resolve(get_or<std::string>(j, "train", ""), base_dir);
    cfg.test_path = resolve(get_or<std::string>(j, "test", ""), base_dir);
    cfg.per_da = get_or<std::size_t>(j, "per_da", 0);
    cfg.style = parse_prompt_style(get_or<std::string>(j, "prompt_style", "tst-vanilla"));
    cfg.n_exemplars = get_or<std::size_t>(j, "n_exemplars", cfg.n_exemplars);
    cfg.rf = parse_ranking_function(get_or<std::string>(j, "rf", "rf2da"));
    if (j.contains("seed") && !j.at("seed").is_null()) {
      if (!j.at("seed").is_number_unsigned()) throw Error(Errc::ConfigError, "seed must be a non-negative integer");
      cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    cfg.output_dir = resolve(get_or<std::string>(j, "output_dir", ""), base_dir);
    cfg.parallelism = get_or<std::size_t>(j, "parallelism", cfg.parallelism);

    if (j.contains("generation")) {
      const json& g = j.at("generation");
      reject_unknown(g, {"k", "temperature", "top_p", "max_tokens", "stop", "retries", "backoff_ms"}, "generation");
      auto& gc = cfg.generation;
      gc.k = get_or(g, "k", gc.k);
      gc.temperature = get_or(g, "temperature", gc.temperature);
      gc.top_p = get_or(g, "top_p", gc.top_p);
      gc.max_tokens = get_or(g, "max_tokens", gc.max_tokens);
      gc.stop = get_or(g, "stop", gc.stop);
      gc.retries = get_or(g, "retries", gc.retries);
      gc.backoff_ms = get_or(g, "backoff_ms", gc.backoff_ms);
    }
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      reject_unknown(g, {"kind", "fixtures", "record", "profile", "url", "path", "model", "no_n", "timeout_seconds",
                         "max_requests"},
                     "generator");
      auto& gs = cfg.generator;
      gs.kind = get_or(g, "kind", gs.kind);
      gs.fixtures = resolve(get_or<std::string>(g, "fixtures", ""), base_dir);
      gs.record = resolve(get_or<std::string>(g, "record", ""), base_dir);
      gs.profile = get_or(g, "profile", gs.profile);
      gs.max_requests = get_or(g, "max_requests", gs.max_requests);
      if (gs.kind == "remote") gs.remote = RemoteOptions::from_env();
      gs.remote.base_url = get_or(g, "url", gs.remote.base_url);
      gs.remote.path = get_or(g, "path", gs.remote.path);
      gs.remote.model = get_or(g, "model", gs.remote.model);
      if (get_or(g, "no_n", false)) gs.remote.supports_n = false;
      gs.remote.timeout_seconds = get_or(g, "timeout_seconds", gs.remote.timeout_seconds);
    }
    if (j.contains("scorer")) {
      const json& s = j.at("scorer");
      reject_unknown(s, {"kind", "url", "allow_stub"}, "scorer");
      cfg.scorer.kind = get_or(s, "kind", cfg.scorer.kind);
      cfg.scorer.url = get_or(s, "url", cfg.scorer.url);
      cfg.scorer.allow_stub = get_or(s, "allow_stub", cfg.scorer.allow_stub);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  const std::string base = fs::path(path).parent_path().string();
  return from_json_text(read_file(path), base.empty() ? "." : base);
}

std::string RunConfig::to_json() const {
  json j;
  j["ontology"] = fs::path(ontology_path).filename().string();
  j["train"] = fs::path(train_path).filename().string();
  j["test"] = fs::path(test_path).filename().string();
  j["per_da"] = per_da;
  j["prompt_style"] = std::string(to_string(style));
  j["n_exemplars"] = n_exemplars;
  j["rf"] = std::string(to_string(rf));
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["generation"] = {{"k", generation.k},
                     {"temperature", generation.temperature},
                     {"top_p", generation.top_p},
                     {"max_tokens", generation.max_tokens},
                     {"stop", generation.stop},
                     {"retries", generation.retries}};
  json g = {{"kind", generator.kind}, {"max_requests", generator.max_requests}};
  if (generator.kind == "mock") g["profile"] = generator.profile;
  if (generator.kind == "remote") {
    g["url"] = generator.remote.base_url;
    g["path"] = generator.remote.path;
    g["model"] = generator.remote.model;
    g["no_n"] = !generator.remote.supports_n;
  }
  j["generator"] = g;
  json s = {{"kind", scorer.kind}};
  if (scorer.kind == "remote") s["url"] = scorer.url;
  j["scorer"] = s;
  return j.dump();
}

void RunConfig::validate() const {
  if (!seed) throw Error(Errc::ConfigError, "a seed is required");
  generation.validate();
  if (parallelism < 1) throw Error(Errc::ConfigError, "parallelism must be >= 1");
  if (generator.kind != "mock" && generator.kind != "replay" && generator.kind != "remote") {
    throw Error(Errc::ConfigError, "unknown generator kind '" + generator.kind + "'");
  }
  if (generator.kind == "mock") profiles_by_name(generator.profile);
  if (generator.kind == "replay" && generator.fixtures.empty()) {
    throw Error(Errc::ConfigError, "replay generator needs a fixtures directory");
  }
  if (generator.kind == "remote" && generator.remote.base_url.empty()) {
    throw Error(Errc::ConfigError, "remote generator needs a url (or DARANK_LLM_URL)");
  }
  if (scorer.kind != "stub" && scorer.kind != "remote") {
    throw Error(Errc::ConfigError, "unknown scorer kind '" + scorer.kind + "'");
  }
  if (scorer.kind == "remote" && scorer.url.empty()) throw Error(Errc::ConfigError, "remote scorer needs a url");
  for (const auto* p : {&ontology_path, &train_path, &test_path}) {
    if (p->empty()) throw Error(Errc::ConfigError, "ontology, train and test paths are required");
    if (!fs::exists(*p)) throw Error(Errc::IoError, "no such file: " + *p);
  }
}

// ---- bindings -------------------------------------------------------------------

std::unique_ptr<Generator> make_generator(const RunConfig& cfg, const DomainOntology& ontology) {
  std::unique_ptr<Generator> gen;
  const auto& gs = cfg.generator;
  if (gs.kind == "mock") {
    gen = std::make_unique<MockGenerator>(ontology, profiles_by_name(gs.profile), cfg.seed.value_or(0));
  } else if (gs.kind == "replay") {
    return std::make_unique<ReplayGenerator>(gs.fixtures);
  } else if (gs.kind == "remote") {
    gen = std::make_unique<RemoteGenerator>(gs.remote);
  } else {
    throw Error(Errc::ConfigError, "unknown generator kind '" + gs.kind + "'");
  }
  if (!gs.record.empty()) return std::make_unique<RecordingGenerator>(std::move(gen), gs.record);
  return gen;
}

std::unique_ptr<Scorer> make_scorer(const RunConfig& cfg, const DomainOntology& ontology) {
  if (cfg.scorer.kind == "stub") return std::make_unique<StubScorer>(std::vector<DomainOntology>{ontology});
  if (cfg.scorer.kind == "remote") return std::make_unique<RemoteScorer>(RemoteScorerOptions{cfg.scorer.url});
  throw Error(Errc::ConfigError, "unknown scorer kind '" + cfg.scorer.kind + "'");
}

void preflight_scorer(const RunConfig& cfg, Scorer& scorer, const DomainOntology& ontology) {
  const HealthInfo info = scorer.health();
  if (cfg.scorer.kind == "remote" && info.mode == "stub" && !cfg.scorer.allow_stub) {
    throw Error(Errc::ConfigError, "scorer service runs in stub mode; set scorer.allow_stub to accept it");
  }
  if (!info.domains.empty() &&
      std::find(info.domains.begin(), info.domains.end(), ontology.domain_name) == info.domains.end()) {
    throw Error(Errc::ScorerUnavailable, "scorer does not serve domain '" + ontology.domain_name + "'");
  }
}

// ---- serialization --------------------------------------------------------------

namespace {

json mr_json(const MeaningRepresentation& mr) {
  json attrs = json::array();
  for (const auto& a : mr.attributes) {
    const char* kind = a.kind == AttributeKind::Categorical ? "categorical"
                       : a.kind == AttributeKind::BooleanTrue ? "true"
                                                              : "false";
    attrs.push_back({{"slot", a.slot}, {"value", a.value}, {"kind", kind}});
  }
  return {{"dialogue_act", mr.dialogue_act}, {"attributes", attrs}, {"text", serialize_mr(mr)}};
}

MeaningRepresentation mr_from(const json& j) {
  MeaningRepresentation mr;
  mr.dialogue_act = j.at("dialogue_act").get<std::string>();
  for (const auto& a : j.at("attributes")) {
    Attribute attr;
    attr.slot = a.at("slot").get<std::string>();
    attr.value = a.at("value").get<std::string>();
    const std::string kind = a.at("kind").get<std::string>();
    attr.kind = kind == "categorical" ? AttributeKind::Categorical
                : kind == "true"      ? AttributeKind::BooleanTrue
                                      : AttributeKind::BooleanFalse;
    mr.attributes.push_back(std::move(attr));
  }
  return mr;
}

json scored_json(const ScoredCandidate& sc) {
  const auto& s = sc.scores;
  const auto& e = sc.slot_errors;
  return {{"gen_index", sc.candidate.gen_index},
          {"text", sc.candidate.text},
          {"raw", sc.candidate.raw},
          {"padded", sc.candidate.padded},
          {"scores",
           {{"dac_label", s.dac_label},
            {"dac_prob", s.dac_prob},
            {"sacc", s.sacc},
            {"pbleu", s.pbleu},
            {"pbbleu", s.pbbleu},
            {"fluency", s.fluency}}},
          {"slot_errors",
           {{"total", e.total_slots}, {"missing", e.missing}, {"incorrect", e.incorrect}, {"ser", e.ser},
            {"sacc", e.sacc}}}};
}

ScoredCandidate scored_from(const json& j, const std::string& prompt_id) {
  ScoredCandidate sc;
  sc.candidate.prompt_id = prompt_id;
  sc.candidate.gen_index = j.at("gen_index").get<std::size_t>();
  sc.candidate.text = j.at("text").get<std::string>();
  sc.candidate.raw = j.at("raw").get<std::string>();
  sc.candidate.padded = j.at("padded").get<bool>();
  const json& s = j.at("scores");
  sc.scores.dac_label = s.at("dac_label").get<std::string>();
  sc.scores.dac_prob = s.at("dac_prob").get<double>();
  sc.scores.sacc = s.at("sacc").get<double>();
  sc.scores.pbleu = s.at("pbleu").get<double>();
  sc.scores.pbbleu = s.at("pbbleu").get<double>();
  sc.scores.fluency = s.at("fluency").get<double>();
  const json& e = j.at("slot_errors");
  sc.slot_errors.total_slots = e.at("total").get<std::size_t>();
  sc.slot_errors.missing = e.at("missing").get<std::vector<std::string>>();
  sc.slot_errors.incorrect = e.at("incorrect").get<std::vector<std::string>>();
  sc.slot_errors.ser = e.at("ser").get<double>();
  sc.slot_errors.sacc = e.at("sacc").get<double>();
  return sc;
}

// Pools cached on disk are only reused when produced by the same bindings.
std::string pool_cache_key(const RunConfig& cfg, const DomainOntology& ontology) {
  json j = json::parse(cfg.to_json());
  json key = {{"generator", j["generator"]}, {"scorer", j["scorer"]}, {"seed", j["seed"]},
              {"domain", ontology.domain_name}, {"fixtures", cfg.generator.fixtures}};
  return sha256_hex(key.dump());
}

std::string directory_digest(const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file()) entries.emplace_back(e.path().filename().string(), file_sha256_hex(e.path().string()));
  }
  std::sort(entries.begin(), entries.end());
  std::string acc;
  for (const auto& [name, digest] : entries) acc += name + " " + digest + "\n";
  return sha256_hex(acc);
}

}  // namespace

std::string report_id(const RunArtifact& artifact, RankingFunction rf) {
  return fmt::format("{}/{}/{}/{}", artifact.domain, to_string(artifact.style), artifact.n_exemplars, to_string(rf));
}

std::string artifact_to_json(const RunArtifact& artifact, const std::vector<RankedPool>& ranked) {
  json j;
  j["config"] = artifact.config_json.empty() ? json(nullptr) : json::parse(artifact.config_json);
  j["provenance"] = artifact.provenance;
  j["domain"] = artifact.domain;
  j["prompt_style"] = std::string(to_string(artifact.style));
  j["n_exemplars"] = artifact.n_exemplars;
  j["rf"] = std::string(to_string(artifact.rf));
  json items = json::array();
  for (std::size_t i = 0; i < artifact.items.size(); ++i) {
    const RunItem& item = artifact.items[i];
    json pool = json::array();
    for (const auto& sc : item.pool) pool.push_back(scored_json(sc));
    json it = {{"index", item.index},         {"mr", mr_json(item.mr)}, {"references", item.references},
               {"prompt_id", item.prompt_id}, {"prompt", item.prompt},  {"pool", pool}};
    if (i < ranked.size()) {
      json order = json::array();
      for (const auto& e : ranked[i].entries) order.push_back(e.scored.candidate.gen_index);
      it["ranking"] = order;
      it["selected"] = ranked[i].best().scored.candidate.gen_index;
    }
    items.push_back(std::move(it));
  }
  j["items"] = items;
  return j.dump(1) + "\n";
}

RunArtifact artifact_from_json(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    RunArtifact a;
    if (!j.at("config").is_null()) a.config_json = j.at("config").dump();
    a.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
    a.domain = j.at("domain").get<std::string>();
    a.style = parse_prompt_style(j.at("prompt_style").get<std::string>());
    a.n_exemplars = j.at("n_exemplars").get<std::size_t>();
    a.rf = parse_ranking_function(j.at("rf").get<std::string>());
    for (const auto& it : j.at("items")) {
      RunItem item;
      item.index = it.at("index").get<std::size_t>();
      item.mr = mr_from(it.at("mr"));
      item.references = it.at("references").get<std::vector<std::string>>();
      item.prompt_id = it.at("prompt_id").get<std::string>();
      item.prompt = it.at("prompt").get<std::string>();
      for (const auto& c : it.at("pool")) item.pool.push_back(scored_from(c, item.prompt_id));
      a.items.push_back(std::move(item));
    }
    return a;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("run artifact: ") + e.what());
  }
}

RunArtifact load_run_artifact(const std::string& path) { return artifact_from_json(read_file(path)); }

// ---- ranking and evaluation -----------------------------------------------------

std::vector<RankedPool> rank_artifact(const RunArtifact& artifact, RankingFunction rf) {
  std::vector<RankedPool> out;
  out.reserve(artifact.items.size());
  for (const auto& item : artifact.items) {
    RankedPool rp = select_best(item.pool, rf, item.mr.dialogue_act);
    rp.item_id = std::to_string(item.index);
    out.push_back(std::move(rp));
  }
  return out;
}

namespace {

EvaluationReport evaluate_ranked(const RunArtifact& artifact, const std::vector<RankedPool>& ranked,
                                 RankingFunction rf) {
  std::vector<SelectedItem> selected;
  selected.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    selected.push_back({artifact.items[i].mr, ranked[i].best().scored, artifact.items[i].references});
  }
  EvaluationReport report = evaluate_run(selected, report_id(artifact, rf));
  if (!ranked.empty()) report.before_after = before_after(ranked);
  report.config_json = artifact.config_json;
  report.provenance = artifact.provenance;
  return report;
}

}  // namespace

EvaluationReport evaluate_artifact(const RunArtifact& artifact, RankingFunction rf) {
  return evaluate_ranked(artifact, rank_artifact(artifact, rf), rf);
}

std::vector<EvaluationReport> compare_rfs(const RunArtifact& artifact, const std::vector<RankingFunction>& rfs) {
  if (rfs.empty()) throw Error(Errc::ConfigError, "no ranking functions to compare");
  std::vector<EvaluationReport> out;
  for (auto rf : rfs) out.push_back(evaluate_artifact(artifact, rf));
  return out;
}

// ---- the run --------------------------------------------------------------------

RunResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  const DomainOntology ontology = DomainOntology::load(cfg.ontology_path);
  auto generator = make_generator(cfg, ontology);
  auto scorer = make_scorer(cfg, ontology);
  preflight_scorer(cfg, *scorer, ontology);
  return run_pipeline(cfg, *generator, *scorer);
}

RunResult run_pipeline(const RunConfig& cfg, Generator& generator, Scorer& scorer) {
  cfg.validate();
  const std::uint64_t seed = *cfg.seed;
  const DomainOntology ontology = DomainOntology::load(cfg.ontology_path);
  const auto train = load_corpus(cfg.train_path, ontology, Split::Train);
  auto test = load_corpus(cfg.test_path, ontology, Split::Test);
  if (cfg.per_da > 0) test = balanced_sample(test, cfg.per_da, derive_seed(seed, 0x7e57));
  const auto exemplars = to_exemplars(train);

  RunArtifact artifact;
  artifact.config_json = cfg.to_json();
  artifact.provenance["ontology"] = file_sha256_hex(cfg.ontology_path);
  artifact.provenance["train"] = file_sha256_hex(cfg.train_path);
  artifact.provenance["test"] = file_sha256_hex(cfg.test_path);
  if (cfg.generator.kind == "replay") artifact.provenance["fixtures"] = directory_digest(cfg.generator.fixtures);
  artifact.domain = ontology.domain_name;
  artifact.style = cfg.style;
  artifact.n_exemplars = cfg.n_exemplars;
  artifact.rf = cfg.rf;

  // Prompts are built up front so that sampling errors surface before any request.
  std::vector<PromptSpec> prompts;
  for (std::size_t i = 0; i < test.size(); ++i) {
    auto ex = sample_exemplars(exemplars, test[i].mr.dialogue_act, cfg.n_exemplars, derive_seed(seed, i));
    prompts.push_back(render_prompt(cfg.style, std::move(ex), test[i].mr, ontology));
    RunItem item;
    item.index = i;
    item.mr = test[i].mr;
    item.references = test[i].references;
    item.prompt_id = make_prompt_id(prompts.back(), cfg.generation);
    item.prompt = prompts.back().rendered;
    artifact.items.push_back(std::move(item));
  }

  const fs::path pool_dir = cfg.output_dir.empty() ? fs::path() : fs::path(cfg.output_dir) / "pools";
  const std::string cache_key = pool_cache_key(cfg, ontology);
  RequestBudget budget(cfg.generator.max_requests);

  std::vector<std::exception_ptr> errors(test.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < test.size(); i = next++) {
      RunItem& item = artifact.items[i];
      try {
        const fs::path pool_file = pool_dir.empty() ? fs::path() : pool_dir / (item.prompt_id + ".json");
        if (!pool_file.empty() && fs::exists(pool_file)) {
          const json cached = json::parse(read_file(pool_file.string()), nullptr, false);
          if (!cached.is_discarded() && cached.value("key", "") == cache_key) {
            for (const auto& c : cached.at("pool")) item.pool.push_back(scored_from(c, item.prompt_id));
            continue;
          }
        }
        const auto candidates = overgenerate(prompts[i], cfg.generation, generator, &budget);
        item.pool = assemble_scores(item.mr, candidates, scorer, ontology);
        if (!pool_file.empty()) {
          json pool = json::array();
          for (const auto& sc : item.pool) pool.push_back(scored_json(sc));
          write_file(pool_file, json{{"key", cache_key}, {"prompt_id", item.prompt_id}, {"pool", pool}}.dump(1));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t width = std::max<std::size_t>(1, std::min(cfg.parallelism, test.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < width; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunResult result;
  result.ranked = rank_artifact(artifact, cfg.rf);
  result.report = evaluate_ranked(artifact, result.ranked, cfg.rf);
  result.artifact = std::move(artifact);

  if (!cfg.output_dir.empty()) {
    const fs::path out(cfg.output_dir);
    write_file(out / "run.json", artifact_to_json(result.artifact, result.ranked));
    write_file(out / "report.json", report_to_json(result.report));
    write_file(out / "report.txt", render_table({result.report}) + "\n" + render_before_after({result.report}));
  }
  return result;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::UnknownDialogueAct:
    case Errc::UnknownSlot:
    case Errc::MalformedSyntax:
    case Errc::DuplicateSlot:
    case Errc::MissingStarter:
    case Errc::MissingDefinition:
    case Errc::InsufficientExamples:
    case Errc::ParseError:
    case Errc::OntologyMismatch:
    case Errc::ConfigError:
      return 2;
    case Errc::EndpointError:
    case Errc::BudgetExceeded:
    case Errc::FixtureMiss:
      return 3;
    case Errc::ScorerUnavailable:
      return 4;
    case Errc::IoError:
      return 5;
    case Errc::EmptyPool:
    case Errc::DegenerateVariance:
      return 1;
  }
  return 1;
}

}  // namespace darank
