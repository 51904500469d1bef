#include "doctest.h"

#include <cmath>

#include "darank/bleu.hpp"
#include "darank/random.hpp"
#include "darank/text.hpp"
#include "oracles.hpp"

using namespace darank;

namespace {

std::vector<std::string> toks(std::string_view s) { return text::metric_tokens(s); }

}  // namespace

TEST_CASE("identity scores one") {
  CHECK(bleu::sentence_bleu("the cat sat on the mat", "the cat sat on the mat") == doctest::Approx(1.0));
  CHECK(bleu::sentence_bleu("hi", "hi") == doctest::Approx(1.0));
  CHECK(bleu::sentence_bleu("", "") == 1.0);
  CHECK(bleu::sentence_bleu("", "x") == 0.0);
}

TEST_CASE("disjoint tokens give the smoothing floor") {
  const double v = bleu::sentence_bleu("a b c d e", "v w x y z");
  CHECK(v > 0.0);
  const double expect = std::exp((std::log(0.1 / 5) + std::log(0.1 / 4) + std::log(0.1 / 3) + std::log(0.1 / 2)) / 4);
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));
  CHECK(v <= 0.1);
}

TEST_CASE("hand-computed short pair") {
  // c = the cat sat (3 tokens), r = the cat sat down (4 tokens)
  // p1 = 3/3, p2 = 2/2, p3 = 1/1; orders 1..3; BP = exp(1 - 4/3)
  const double expect = std::exp(1.0 - 4.0 / 3.0);
  CHECK(bleu::sentence_bleu("the cat sat", "the cat sat down") == doctest::Approx(expect).epsilon(1e-12));
  CHECK(oracle::sentence_bleu(toks("the cat sat"), toks("the cat sat down")) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("clipped counts") {
  // c = the the the the, r = the cat: p1 = 1/4 (clipped), p2..p4 = eps / t
  const double p1 = 1.0 / 4, p2 = 0.1 / 3, p3 = 0.1 / 2, p4 = 0.1 / 1;
  const double expect = std::exp((std::log(p1) + std::log(p2) + std::log(p3) + std::log(p4)) / 4);
  CHECK(bleu::sentence_bleu("the the the the", "the cat") == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("matches the brute-force oracle on random pairs") {
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", ",", "."};
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::string> c, r;
    const auto nc = rng.below(12), nr = 1 + rng.below(12);
    for (std::uint64_t i = 0; i < nc; ++i) c.push_back(vocab[rng.below(vocab.size())]);
    for (std::uint64_t i = 0; i < nr; ++i) r.push_back(vocab[rng.below(vocab.size())]);
    CHECK(std::abs(bleu::sentence_bleu(c, r) - oracle::sentence_bleu(c, r)) <= 1e-9);
  }
}

TEST_CASE("range") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::string> c, r;
    for (int i = 0; i < 1 + int(rng.below(8)); ++i) c.push_back(std::string(1, char('a' + rng.below(3))));
    for (int i = 0; i < 1 + int(rng.below(8)); ++i) r.push_back(std::string(1, char('a' + rng.below(3))));
    const double v = bleu::sentence_bleu(c, r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("corpus bleu") {
  bleu::CorpusBleu perfect;
  perfect.add("the cat sat on the mat", {"the cat sat on the mat"});
  CHECK(perfect.score() == doctest::Approx(1.0));
  CHECK(perfect.segments() == 1);

  bleu::CorpusBleu none;
  none.add("a b c d", {"w x y z"});
  CHECK(none.score() == 0.0);

  // second reference supplies the missing bigram; closest reference length is 4
  bleu::CorpusBleu multi;
  multi.add("a b c d", {"a b x d", "b c y"});
  // p1 = 4/4? a,b,c(from ref2),d -> 4/4; p2: ab, bc -> 2/3; p3: 0 -> score 0 (unsmoothed)
  CHECK(multi.score() == 0.0);

  bleu::CorpusBleu two;
  two.add("a b c d e", {"a b c d e"});
  two.add("f g h i", {"f g h i j k"});
  // matches: p1 9/9, p2 7/7, p3 5/5, p4 3/3; c = 9, r = 11
  CHECK(two.score() == doctest::Approx(std::exp(1.0 - 11.0 / 9.0)).epsilon(1e-12));
}
