#include "doctest.h"

#include <cmath>
#include <sstream>

#include "darank/error.hpp"
#include "darank/evaluation.hpp"
#include "darank/random.hpp"
#include "darank/text.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace darank;
using darank::testing::scored;

namespace {

// Candidate with `missing` of `total` slots unrealized.
ScoredCandidate with_slots(std::string label, std::size_t total, std::size_t missing, std::size_t gen_index = 0) {
  auto c = scored(std::move(label), 0, 0.5, 0.5, gen_index);
  c.slot_errors.total_slots = total;
  for (std::size_t i = 0; i < missing; ++i) c.slot_errors.missing.push_back("s" + std::to_string(i));
  c.slot_errors.ser = total ? static_cast<double>(missing) / static_cast<double>(total) : 0.0;
  c.slot_errors.sacc = 1.0 - c.slot_errors.ser;
  c.scores.sacc = c.slot_errors.sacc;
  return c;
}

SelectedItem item(std::string da, ScoredCandidate c, std::vector<std::string> refs = {}) {
  SelectedItem it;
  it.mr.dialogue_act = std::move(da);
  it.selected = std::move(c);
  it.references = std::move(refs);
  return it;
}

RankedPool pool_of(std::string target, std::vector<ScoredCandidate> cands) {
  return select_best(std::move(cands), RankingFunction::RF2_DA, target);
}

}  // namespace

TEST_CASE("evaluate_run arithmetic") {
  SUBCASE("all perfect") {
    std::vector<SelectedItem> items;
    for (int i = 0; i < 5; ++i) items.push_back(item("inform", with_slots("inform", 3, 0)));
    const auto r = evaluate_run(items, "x");
    CHECK(r.perf == 100.0);
    CHECK(r.dac == 100.0);
    CHECK(r.sacc_avg == 100.0);
    CHECK(r.n_items == 5);
    CHECK_FALSE(r.bleu.has_value());
  }
  SUBCASE("one missing slot of four in one item") {
    std::vector<SelectedItem> items = {item("inform", with_slots("inform", 4, 1)), item("inform", with_slots("inform", 4, 0)),
                                       item("suggest", with_slots("suggest", 4, 0)),
                                       item("suggest", with_slots("suggest", 4, 0))};
    const auto r = evaluate_run(items);
    CHECK(r.perf == 75.0);
    CHECK(r.sacc_avg == doctest::Approx(93.75).epsilon(1e-12));
    CHECK(r.dac == 100.0);
    CHECK(r.per_da.at("inform").perf == 50.0);
    CHECK(r.per_da.at("suggest").perf == 100.0);
    CHECK(r.per_da.at("inform").n == 2);
  }
  SUBCASE("other is never DA-correct") {
    const auto r = evaluate_run({item("inform", with_slots("other", 2, 0)), item("inform", with_slots("inform", 2, 1))});
    CHECK(r.dac == 50.0);
    CHECK(r.perf == 0.0);
    CHECK(r.perf <= r.dac);
  }
  SUBCASE("BLEU only when references exist") {
    auto c = with_slots("inform", 1, 0);
    c.candidate.text = "the game is great fun";
    const auto r = evaluate_run({item("inform", c, {"the game is great fun"}), item("inform", c)});
    REQUIRE(r.bleu.has_value());
    CHECK(*r.bleu == doctest::Approx(100.0));
  }
}

TEST_CASE("before and after ranking") {
  SUBCASE("uniform pools") {
    std::vector<RankedPool> pools;
    for (int p = 0; p < 3; ++p) {
      std::vector<ScoredCandidate> c;
      for (std::size_t i = 0; i < 4; ++i) c.push_back(with_slots("inform", 2, 0, i));
      pools.push_back(pool_of("inform", c));
    }
    const auto ba = before_after(pools);
    CHECK(ba.before.perf == ba.after.perf);
    CHECK(ba.before.sacc == ba.after.sacc);
    CHECK(ba.before.dac == ba.after.dac);
    CHECK(ba.before.n == 12);
    CHECK(ba.after.n == 3);
  }
  SUBCASE("one perfect candidate among ten") {
    std::vector<RankedPool> pools;
    for (std::size_t p = 0; p < 4; ++p) {
      std::vector<ScoredCandidate> c;
      for (std::size_t i = 0; i < 10; ++i) {
        if (i == (p * 3) % 10) {
          c.push_back(with_slots("inform", 2, 0, i));
        } else if (i % 2) {
          c.push_back(with_slots("confirm", 2, 0, i));
        } else {
          c.push_back(with_slots("inform", 2, 1, i));
        }
      }
      pools.push_back(pool_of("inform", c));
    }
    const auto ba = before_after(pools);
    CHECK(ba.after.perf == 100.0);
    CHECK(ba.before.perf == 10.0);
    CHECK(ba.after.sacc >= ba.before.sacc);
  }
}

TEST_CASE("pearson") {
  const std::vector<double> xs = {1, 2, 3, 4, 5, 6};
  std::vector<double> lin, neg;
  for (double x : xs) {
    lin.push_back(2 * x + 1);
    neg.push_back(-x);
  }
  CHECK(pearson(xs, lin).r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson(xs, neg).r == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pearson(xs, xs).r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson(xs, lin).p == 0.0);

  const std::vector<double> fx = {0.1, 0.4, 0.35, 0.8, 0.55, 0.9, 0.2, 0.65, 0.3, 0.75};
  const std::vector<double> fy = {0.2, 0.5, 0.3, 0.7, 0.6, 0.95, 0.1, 0.5, 0.45, 0.8};
  const auto r = pearson(fx, fy);
  CHECK(std::abs(r.r - oracle::pearson_r(fx, fy)) < 1e-12);
  CHECK(r.p > 0.0);
  CHECK(r.p < 0.01);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> u, v;
    for (int i = 0; i < 10; ++i) {
      u.push_back(rng.unit());
      v.push_back(rng.unit());
    }
    const auto pr = pearson(u, v);
    CHECK(std::abs(pr.r - oracle::pearson_r(u, v)) < 1e-12);
    CHECK((pr.r >= -1.0 && pr.r <= 1.0));
    CHECK((pr.p >= 0.0 && pr.p <= 1.0));
  }

  try {
    pearson(xs, std::vector<double>(6, 2.0));
    FAIL("constant series");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateVariance);
  }
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(pearson(xs, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("pearson p-value against a known t value") {
  // r = 0.6 with n = 12 gives t = 0.6*sqrt(10/0.64) = 2.371708; P(|T_10| > 2.3717) = 0.03929
  // Construct a series with exactly that correlation: y = 0.6 z_x + 0.8 z_perp.
  std::vector<double> x = {-5.5, -4.5, -3.5, -2.5, -1.5, -0.5, 0.5, 1.5, 2.5, 3.5, 4.5, 5.5};
  std::vector<double> perp = {1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1};
  // perp is orthogonal to x and to the constant vector; scale both to unit norm
  double nx = 0, np = 0, dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nx += x[i] * x[i];
    np += perp[i] * perp[i];
    dot += x[i] * perp[i];
  }
  REQUIRE(dot == 0.0);
  std::vector<double> y;
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(0.6 * x[i] / std::sqrt(nx) + 0.8 * perp[i] / std::sqrt(np));
  const auto r = pearson(x, y);
  CHECK(r.r == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(0.03929).epsilon(1e-3));
}

TEST_CASE("correlation table") {
  std::vector<RankedPool> pools;
  std::vector<ScoredCandidate> c;
  for (std::size_t i = 0; i < 5; ++i) c.push_back(scored("inform", 0.2 * i, 0.1 * i, 0.5, i, 1, 0.3 + 0.1 * i));
  pools.push_back(select_best(c, RankingFunction::RF1, "inform"));
  const auto t = correlate_with_sacc(pools);
  REQUIRE(t.size() == 3);
  CHECK(t[0].metric == "pbleu");
  CHECK(t[0].result->r == doctest::Approx(1.0));
  CHECK(t[1].result->r == doctest::Approx(1.0));
  CHECK_FALSE(t[2].result.has_value());  // constant fluency
  CHECK(t[2].n == 5);
  CHECK(render_correlations(t).find("n/a") != std::string::npos);
}

TEST_CASE("report serialization") {
  EvaluationReport r;
  r.id = "viggo/tst-dialogue/2/rf2da";
  r.n_items = 7;
  r.perf = 100.0 / 7.0;
  r.sacc_avg = 93.75;
  r.dac = 1.0 / 3.0;
  r.bleu = 12.345678901234;
  r.per_da["inform"] = {3, 33.3333, 50.0, 66.6666};
  r.before_after = BeforeAfter{{70, 10, 65.29, 10}, {7, 100, 100, 100}};
  r.config_json = R"({"k":10,"seed":7})";
  r.provenance["ontology"] = "abc";

  const std::string js = report_to_json(r);
  CHECK(report_from_json(js) == r);
  CHECK(report_to_json(report_from_json(js)) == js);
  CHECK(report_to_json(r) == js);
  CHECK_THROWS_AS(report_from_json("{"), Error);

  EvaluationReport plain;
  plain.id = "p";
  CHECK(report_from_json(report_to_json(plain)) == plain);

  const std::string table = render_table({r, plain});
  std::vector<std::string> lines;
  std::istringstream in(table);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() >= 3);
  const auto header = text::split_whitespace(lines[0]);
  CHECK(header == std::vector<std::string>{"ID", "N", "PERF", "SACC", "DAC", "BLEU"});
  CHECK(text::split_whitespace(lines[1]).at(2) == "14.29");
  CHECK(text::split_whitespace(lines[2]).back() == "-");

  testing::TempDir dir;
  emit_report(r, ReportFormat::Json, dir.str("a.json"));
  emit_report(r, ReportFormat::Json, dir.str("b.json"));
  CHECK(testing::read_text(dir.str("a.json")) == testing::read_text(dir.str("b.json")));
  emit_report(r, ReportFormat::Table, dir.str("t.txt"));
  CHECK(testing::read_text(dir.str("t.txt")).find("PERF before") != std::string::npos);
  CHECK_THROWS_AS(emit_report(r, ReportFormat::Json, dir.str("missing/dir/x.json")), Error);
}
