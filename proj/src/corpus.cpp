#include "darank/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "darank/error.hpp"
#include "darank/random.hpp"
#include "darank/text.hpp"
#include "json.hpp"

namespace darank {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view id) {
  if (id == "train") return Split::Train;
  if (id == "dev") return Split::Dev;
  if (id == "test") return Split::Test;
  throw Error(Errc::ConfigError, "unknown split '" + std::string(id) + "'");
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text, std::vector<std::size_t>* lines) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) {
      records.push_back(std::move(record));
      if (lines) lines->push_back(record_line);
    }
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) throw Error(Errc::ParseError, "stray quote in field", line);
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw Error(Errc::ParseError, "unterminated quoted field", record_line);
  if (!field.empty() || !record.empty()) end_record();
  return records;
}

std::string csv_field(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

std::size_t column(const std::vector<std::string>& header, std::initializer_list<std::string_view> names) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    for (auto n : names) {
      if (text::iequals(text::trim(header[i]), n)) return i;
    }
  }
  throw Error(Errc::ParseError, "missing column '" + std::string(*names.begin()) + "'", 1);
}

}  // namespace

std::vector<CorpusItem> parse_corpus(std::string_view csv_text, const DomainOntology& ontology, Split split) {
  std::vector<std::size_t> lines;
  const auto records = parse_csv(csv_text, &lines);
  if (records.empty()) throw Error(Errc::ParseError, "empty corpus file", 1);
  const std::size_t mr_col = column(records.front(), {"mr"});
  const std::size_t ref_col = column(records.front(), {"ref", "reference"});

  std::vector<CorpusItem> items;
  std::map<std::string, std::size_t> index;  // canonical MR text -> item
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t line = lines[r];
    if (rec.size() <= std::max(mr_col, ref_col)) {
      throw Error(Errc::ParseError, "line " + std::to_string(line) + ": too few columns", line);
    }
    MeaningRepresentation mr;
    try {
      mr = parse_mr(rec[mr_col], ontology);
    } catch (const Error& e) {
      const bool mismatch = e.code() == Errc::UnknownSlot || e.code() == Errc::UnknownDialogueAct;
      throw Error(mismatch ? Errc::OntologyMismatch : Errc::ParseError,
                  "line " + std::to_string(line) + ": " + e.what(), line);
    }
    const std::string ref = text::trim(rec[ref_col]);
    const std::string key = serialize_mr(mr);
    auto [it, inserted] = index.emplace(key, items.size());
    if (inserted) {
      CorpusItem item;
      item.mr = std::move(mr);
      item.split = split;
      item.line = line;
      items.push_back(std::move(item));
    }
    if (!ref.empty()) items[it->second].references.push_back(ref);
  }
  if (split == Split::Train) {
    for (const auto& item : items) {
      if (item.references.empty()) {
        throw Error(Errc::ParseError, "line " + std::to_string(item.line) + ": training item without a reference",
                    item.line);
      }
    }
  }
  return items;
}

std::vector<CorpusItem> load_corpus(const std::string& path, const DomainOntology& ontology, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open corpus " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), ontology, split);
}

std::string corpus_to_csv(const std::vector<CorpusItem>& items) {
  std::string out = "mr,ref\n";
  for (const auto& item : items) {
    const std::string mr = csv_field(serialize_mr(item.mr));
    if (item.references.empty()) {
      out += mr + ",\n";
      continue;
    }
    for (const auto& ref : item.references) out += mr + "," + csv_field(ref) + "\n";
  }
  return out;
}

void save_corpus(const std::vector<CorpusItem>& items, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << corpus_to_csv(items);
}

std::map<std::string, std::size_t> da_histogram(const std::vector<CorpusItem>& items) {
  std::map<std::string, std::size_t> h;
  for (const auto& item : items) ++h[item.mr.dialogue_act];
  return h;
}

std::vector<CorpusItem> balanced_sample(const std::vector<CorpusItem>& items, std::size_t per_da, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_da;
  for (std::size_t i = 0; i < items.size(); ++i) by_da[items[i].mr.dialogue_act].push_back(i);
  std::vector<CorpusItem> out;
  std::uint64_t stream = 0;
  for (const auto& [da, idx] : by_da) {
    if (idx.size() < per_da) {
      throw Error(Errc::InsufficientExamples, "DA '" + da + "' has " + std::to_string(idx.size()) + " items, need " +
                                                  std::to_string(per_da));
    }
    Rng rng(derive_seed(seed, stream++));
    for (std::size_t k : rng.sample_indices(idx.size(), per_da)) out.push_back(items[idx[k]]);
  }
  return out;
}

std::vector<Exemplar> to_exemplars(const std::vector<CorpusItem>& items) {
  std::vector<Exemplar> out;
  for (const auto& item : items) {
    for (const auto& ref : item.references) out.push_back({item.mr, ref});
  }
  return out;
}

std::string import_viggo(std::string_view csv_text, const DomainOntology& ontology) {
  // one output row per input row, MR rewritten in canonical syntax
  std::vector<std::size_t> lines;
  const auto records = parse_csv(csv_text, &lines);
  if (records.empty()) throw Error(Errc::ParseError, "empty ViGGO file", 1);
  const std::size_t mr_col = column(records.front(), {"mr"});
  const std::size_t ref_col = column(records.front(), {"ref", "reference"});
  std::string out = "mr,ref\n";
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() <= std::max(mr_col, ref_col)) {
      throw Error(Errc::ParseError, "line " + std::to_string(lines[r]) + ": too few columns", lines[r]);
    }
    MeaningRepresentation mr;
    try {
      mr = parse_mr(rec[mr_col], ontology);
    } catch (const Error& e) {
      const bool mismatch = e.code() == Errc::UnknownSlot || e.code() == Errc::UnknownDialogueAct;
      throw Error(mismatch ? Errc::OntologyMismatch : Errc::ParseError,
                  "line " + std::to_string(lines[r]) + ": " + e.what(), lines[r]);
    }
    out += csv_field(serialize_mr(mr)) + "," + csv_field(text::trim(rec[ref_col])) + "\n";
  }
  return out;
}

std::string rnnlg_mr_to_canonical(std::string_view mr) {
  std::string s = text::trim(mr);
  if (!s.empty() && s.front() == '?') s.erase(0, 1);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw Error(Errc::MalformedSyntax, "RNNLG MR '" + std::string(mr) + "' lacks parentheses");
  }
  const std::string da = text::trim(s.substr(0, open));
  const std::string body = s.substr(open + 1, s.size() - open - 2);

  std::vector<std::string> parts;
  std::string cur;
  bool in_quote = false;
  for (char c : body) {
    if (c == '\'') in_quote = !in_quote;
    if (c == ';' && !in_quote) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!text::trim(cur).empty()) parts.push_back(cur);

  std::string out = da + "(";
  bool first = true;
  for (const auto& p : parts) {
    const std::string part = text::trim(p);
    if (part.empty()) continue;
    std::string slot = part;
    std::string value;
    if (const auto eq = part.find('='); eq != std::string::npos) {
      slot = text::trim(part.substr(0, eq));
      value = text::trim(part.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '\'' && value.back() == '\'') value = value.substr(1, value.size() - 2);
    }
    std::string escaped;
    for (char c : value) {
      if (c == ']' || c == '\\') escaped.push_back('\\');
      escaped.push_back(c);
    }
    if (!first) out += ", ";
    out += slot + "[" + escaped + "]";
    first = false;
  }
  return out + ")";
}

std::string import_rnnlg(std::string_view json_text, const DomainOntology& ontology) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("RNNLG file: ") + e.what());
  }
  if (!doc.is_array()) throw Error(Errc::ParseError, "RNNLG file must hold a JSON list");
  std::string out = "mr,ref\n";
  std::size_t row = 0;
  for (const auto& entry : doc) {
    ++row;
    if (!entry.is_array() || entry.size() < 2 || !entry[0].is_string() || !entry[1].is_string()) {
      throw Error(Errc::ParseError, "entry " + std::to_string(row) + ": expected [mr, ref, ...]", row);
    }
    MeaningRepresentation mr;
    try {
      mr = parse_mr(rnnlg_mr_to_canonical(entry[0].get<std::string>()), ontology);
    } catch (const Error& e) {
      const bool mismatch = e.code() == Errc::UnknownSlot || e.code() == Errc::UnknownDialogueAct;
      throw Error(mismatch ? Errc::OntologyMismatch : Errc::ParseError,
                  "entry " + std::to_string(row) + ": " + e.what(), row);
    }
    out += csv_field(serialize_mr(mr)) + "," + csv_field(text::trim(entry[1].get<std::string>())) + "\n";
  }
  return out;
}

}  // namespace darank
