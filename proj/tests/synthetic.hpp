#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "darank/corpus.hpp"
#include "darank/generation.hpp"
#include "darank/mr.hpp"
#include "darank/random.hpp"
#include "support.hpp"

namespace darank::testing {

// Made-up surface values that collide with no ontology synonym or starter.
inline const std::vector<std::string>& fake_names() {
  static const std::vector<std::string> v = {"Zorblax Saga 3", "Quillon: Ashfall", "Mirewood Tactics", "Velkor Rising",
                                             "Brindle Drift", "Osmund's Keep", "Tarnfield 2", "Hollow Verge"};
  return v;
}

inline const std::vector<std::string>& fake_developers() {
  static const std::vector<std::string> v = {"Kestrel Forge", "Umbral Pixel", "Nadir Works", "Piketon Labs"};
  return v;
}

inline const std::vector<std::string>& fake_genres() {
  static const std::vector<std::string> v = {"roguelike", "platformer", "racing", "tactical shooter", "puzzle"};
  return v;
}

// A random valid MR for `da` over the ViGGO slots.
inline MeaningRepresentation random_viggo_mr(Rng& rng, const std::string& da) {
  const auto& o = viggo();
  auto pick = [&](const std::vector<std::string>& v) { return v[rng.below(v.size())]; };
  MeaningRepresentation mr;
  mr.dialogue_act = da;
  mr.attributes.push_back({"name", pick(fake_names()), AttributeKind::Categorical});
  const std::vector<std::string> optional = {"developer", "genres", "release_year", "esrb", "rating",
                                             "has_multiplayer", "available_on_steam", "has_linux_release"};
  for (auto i : rng.sample_indices(optional.size(), 1 + rng.below(3))) {
    const std::string& slot = optional[i];
    Attribute a{slot, "", AttributeKind::Categorical};
    if (slot == "developer") a.value = pick(fake_developers());
    if (slot == "genres") a.value = pick(fake_genres());
    if (slot == "release_year") a.value = std::to_string(1990 + rng.below(30));
    if (slot == "esrb") a.value = pick(o.find_slot("esrb")->values);
    if (slot == "rating") a.value = pick(o.find_slot("rating")->values);
    if (o.find_slot(slot)->kind == SlotKind::Boolean) {
      const bool yes = rng.below(2) == 0;
      a.value = yes ? "yes" : "no";
      a.kind = yes ? AttributeKind::BooleanTrue : AttributeKind::BooleanFalse;
    }
    mr.attributes.push_back(a);
  }
  return mr;
}

inline std::vector<std::string> content_das() {
  std::vector<std::string> out;
  for (const auto& d : viggo().dialogue_acts)
    if (d != "other") out.push_back(d);
  return out;
}

// "Zorblax Saga 3 Kab": distinct names so rows never merge into one item.
inline std::string unique_suffix(std::size_t n) {
  std::string s = "K";
  do {
    s.push_back(static_cast<char>('a' + n % 26));
    n /= 26;
  } while (n > 0);
  return s;
}

// Writes train/test CSVs with `train_per_da` and `test_per_da` items for every
// DA. References are template realizations.
inline void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t train_per_da,
                                   std::size_t test_per_da, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusItem> train, test;
  std::size_t serial = 0;
  for (const auto& da : content_das()) {
    for (std::size_t i = 0; i < train_per_da; ++i) {
      CorpusItem item;
      item.mr = random_viggo_mr(rng, da);
      item.mr.attributes[0].value += " " + unique_suffix(serial++);
      item.references = {mock_realize(item.mr, viggo(), {})};
      item.split = Split::Train;
      train.push_back(item);
    }
    for (std::size_t i = 0; i < test_per_da; ++i) {
      CorpusItem item;
      item.mr = random_viggo_mr(rng, da);
      item.mr.attributes[0].value += " " + unique_suffix(serial++);
      item.references = {mock_realize(item.mr, viggo(), {})};
      test.push_back(item);
    }
  }
  std::filesystem::create_directories(dir);
  save_corpus(train, (dir / "train.csv").string());
  save_corpus(test, (dir / "test.csv").string());
}

}  // namespace darank::testing
