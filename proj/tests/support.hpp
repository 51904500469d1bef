#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "darank/ontology.hpp"
#include "darank/random.hpp"
#include "darank/scoring.hpp"

namespace darank::testing {

inline const std::string kSourceDir = DARANK_SOURCE_DIR;

inline std::string source_path(const std::string& rel) { return kSourceDir + "/" + rel; }

inline const DomainOntology& viggo() {
  static const DomainOntology o = DomainOntology::load(source_path("data/ontologies/viggo.json"));
  return o;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << body;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "darank") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& rel = {}) const { return rel.empty() ? path_.string() : (path_ / rel).string(); }

 private:
  std::filesystem::path path_;
};

inline ScoredCandidate scored(std::string label, double sacc, double pbleu, double fluency, std::size_t gen_index,
                              double dac_prob = 0.0, double pbbleu = 0.0) {
  ScoredCandidate c;
  c.candidate.gen_index = gen_index;
  c.candidate.text = "c" + std::to_string(gen_index);
  c.scores.dac_label = std::move(label);
  c.scores.dac_prob = dac_prob;
  c.scores.sacc = sacc;
  c.scores.pbleu = pbleu;
  c.scores.pbbleu = pbbleu;
  c.scores.fluency = fluency;
  return c;
}

}  // namespace darank::testing
