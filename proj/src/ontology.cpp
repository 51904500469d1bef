#include "darank/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "darank/error.hpp"
#include "json.hpp"

namespace darank {

using nlohmann::json;

bool DomainOntology::has_da(std::string_view da) const {
  return std::find(dialogue_acts.begin(), dialogue_acts.end(), da) != dialogue_acts.end();
}

const SlotInfo* DomainOntology::find_slot(std::string_view slot) const {
  auto it = slots.find(std::string(slot));
  return it == slots.end() ? nullptr : &it->second;
}

namespace {

std::map<std::string, std::string> string_map(const json& doc, const char* key) {
  std::map<std::string, std::string> out;
  if (doc.contains(key)) {
    for (const auto& [k, v] : doc.at(key).items()) out.emplace(k, v.get<std::string>());
  }
  return out;
}

void check_das(const DomainOntology& o, const std::map<std::string, std::string>& m, const char* what) {
  for (const auto& [da, _] : m) {
    if (!o.has_da(da)) throw Error(Errc::ConfigError, std::string(what) + " names unknown DA '" + da + "'");
  }
}

}  // namespace

DomainOntology DomainOntology::from_json_text(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ConfigError, std::string("ontology: ") + e.what());
  }
  DomainOntology o;
  try {
    o.domain_name = doc.at("domain").get<std::string>();
    o.dialogue_acts = doc.at("dialogue_acts").get<std::vector<std::string>>();
    if (doc.contains("content_free")) {
      for (const auto& d : doc.at("content_free")) o.content_free.insert(d.get<std::string>());
    }
    for (const auto& [name, s] : doc.at("slots").items()) {
      SlotInfo info;
      const auto kind = s.value("kind", std::string("categorical"));
      if (kind == "boolean") {
        info.kind = SlotKind::Boolean;
      } else if (kind != "categorical") {
        throw Error(Errc::ConfigError, "slot '" + name + "' has unknown kind '" + kind + "'");
      }
      if (s.contains("phrase")) info.phrase = s.at("phrase").get<std::string>();
      if (s.contains("cues")) info.cues = s.at("cues").get<std::vector<std::string>>();
      if (s.contains("values")) info.values = s.at("values").get<std::vector<std::string>>();
      if (s.contains("value_synonyms")) {
        info.value_synonyms = s.at("value_synonyms").get<std::map<std::string, std::vector<std::string>>>();
      }
      o.slots.emplace(name, std::move(info));
    }
    o.starters = string_map(doc, "starters");
    o.questions = string_map(doc, "questions");
    o.paraphrase_starters = string_map(doc, "paraphrase_starters");
    o.definitions = string_map(doc, "definitions");
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("ontology: ") + e.what());
  }

  if (!o.has_da(kOtherDa)) throw Error(Errc::ConfigError, "ontology must list the reserved DA 'other'");
  for (const auto& da : o.content_free) {
    if (!o.has_da(da)) throw Error(Errc::ConfigError, "content_free names unknown DA '" + da + "'");
  }
  check_das(o, o.starters, "starters");
  check_das(o, o.questions, "questions");
  check_das(o, o.paraphrase_starters, "paraphrase_starters");
  check_das(o, o.definitions, "definitions");
  return o;
}

DomainOntology DomainOntology::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open ontology " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string DomainOntology::to_json_text() const {
  json doc;
  doc["domain"] = domain_name;
  doc["dialogue_acts"] = dialogue_acts;
  doc["content_free"] = content_free;
  json slots_doc = json::object();
  for (const auto& [name, info] : slots) {
    json s;
    s["kind"] = info.kind == SlotKind::Boolean ? "boolean" : "categorical";
    if (info.phrase) s["phrase"] = *info.phrase;
    if (!info.cues.empty()) s["cues"] = info.cues;
    if (!info.values.empty()) s["values"] = info.values;
    if (!info.value_synonyms.empty()) s["value_synonyms"] = info.value_synonyms;
    slots_doc[name] = s;
  }
  doc["slots"] = slots_doc;
  doc["starters"] = starters;
  doc["questions"] = questions;
  doc["paraphrase_starters"] = paraphrase_starters;
  doc["definitions"] = definitions;
  return doc.dump(2);
}

}  // namespace darank
