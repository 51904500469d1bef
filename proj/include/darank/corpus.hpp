#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "darank/mr.hpp"
#include "darank/ontology.hpp"
#include "darank/prompts.hpp"

namespace darank {

enum class Split { Train, Dev, Test };

std::string_view to_string(Split split);
Split parse_split(std::string_view id);

struct CorpusItem {
  MeaningRepresentation mr;
  std::vector<std::string> references;  // grouped rows sharing the MR text
  Split split = Split::Test;
  std::size_t line = 0;  // line of the first row in the source file
};

/// RFC 4180 records. Quoted fields may span lines; `lines` receives the line
/// number each record starts on.
std::vector<std::vector<std::string>> parse_csv(std::string_view text, std::vector<std::size_t>* lines = nullptr);
std::string csv_field(std::string_view field);

/// Canonical corpus: CSV with a header containing `mr` and `ref` columns, one
/// row per (MR, reference). Rows with identical MR text become one item.
/// Errors: ParseError / OntologyMismatch carrying the line number.
std::vector<CorpusItem> parse_corpus(std::string_view csv_text, const DomainOntology& ontology, Split split);
std::vector<CorpusItem> load_corpus(const std::string& path, const DomainOntology& ontology, Split split);

std::string corpus_to_csv(const std::vector<CorpusItem>& items);
void save_corpus(const std::vector<CorpusItem>& items, const std::string& path);

/// Exactly per_da items for every DA present, in DA order then draw order.
/// Throws InsufficientExamples naming the first short DA.
std::vector<CorpusItem> balanced_sample(const std::vector<CorpusItem>& items, std::size_t per_da, std::uint64_t seed);

std::map<std::string, std::size_t> da_histogram(const std::vector<CorpusItem>& items);

/// One exemplar per (item, reference) pair.
std::vector<Exemplar> to_exemplars(const std::vector<CorpusItem>& items);

/// Released ViGGO CSV (columns "mr", "ref", extra columns ignored) to the
/// canonical format, validating every MR.
std::string import_viggo(std::string_view csv_text, const DomainOntology& ontology);

/// Released RNNLG JSON (list of [mr, ref, ...] with MRs such as
/// `inform(name='hp';type=laptop)` or `?request(battery)`) to canonical CSV.
std::string import_rnnlg(std::string_view json_text, const DomainOntology& ontology);

/// Converts one RNNLG MR string to the `da(slot[value], ...)` syntax.
std::string rnnlg_mr_to_canonical(std::string_view mr);

}  // namespace darank
