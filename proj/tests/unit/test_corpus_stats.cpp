#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "oracles.hpp"
#include "psylex/corpus/load.hpp"
#include "psylex/corpus/matrix_io.hpp"
#include "psylex/report.hpp"
#include "psylex/stats/agreement.hpp"
#include "psylex/stats/correlation.hpp"
#include "psylex/stats/reliability.hpp"
#include "psylex/text/scoring.hpp"
#include "psylex/translate/annotation.hpp"
#include "psylex/translate/merge.hpp"
#include "support.hpp"

using namespace psylex;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("corpus loading") {
  SECTION("CSV keeps order and drops token-less documents") {
    const auto c = load_corpus_text("id,text\nd1,\"Hello, world\"\nd2,123 !!\nd3,bye\n", CorpusFormat::csv);
    REQUIRE(c.size() == 2);
    CHECK(c.documents[0].id == "d1");
    CHECK(c.documents[1].text == "bye");
    CHECK(c.dropped == 1);
  }
  SECTION("CSV without an id column numbers the rows") {
    CorpusOptions o;
    o.text_field = "body";
    const auto c = load_corpus_text("body\nalpha\nbeta\n", CorpusFormat::csv, o);
    CHECK(c.documents[1].id == "row2");
  }
  SECTION("JSONL") {
    const auto c = load_corpus_text("{\"id\": 7, \"text\": \"seven\"}\n\n{\"text\": \"eight\"}\n", CorpusFormat::jsonl);
    REQUIRE(c.size() == 2);
    CHECK(c.documents[0].id == "7");
    CHECK(c.documents[1].id == "line3");
    CHECK_THROWS_WITH(load_corpus_text("{\"text\": 1}\n", CorpusFormat::jsonl), ContainsSubstring("not a string"));
    CHECK_THROWS_WITH(load_corpus_text("{oops\n", CorpusFormat::jsonl), ContainsSubstring("line 1"));
  }
  SECTION("errors") {
    CHECK_THROWS_WITH(load_corpus_text("id,text\na,x\na,y\n", CorpusFormat::csv), ContainsSubstring("duplicate"));
    CHECK_THROWS_WITH(load_corpus_text("id,words\na,x\n", CorpusFormat::csv), ContainsSubstring("no column 'text'"));
    CHECK_THROWS_AS(load_corpus_text("id,text\na,\xc3\n", CorpusFormat::csv), EncodingError);
  }
  SECTION("directory of text files, sorted by name") {
    test::TempDir dir;
    test::spit(dir / "b.txt", "second doc");
    test::spit(dir / "a.txt", "first doc");
    test::spit(dir / "notes.md", "ignored");
    const auto c = load_corpus(dir.path(), CorpusFormat::txt_dir);
    REQUIRE(c.size() == 2);
    CHECK(c.documents[0].id == "a");
    CHECK(guess_corpus_format(dir.path()) == CorpusFormat::txt_dir);
  }
}

TEST_CASE("corpus format names") {
  CHECK(parse_corpus_format("csv") == CorpusFormat::csv);
  CHECK(parse_corpus_format("jsonl") == CorpusFormat::jsonl);
  CHECK(parse_corpus_format("txt_dir") == CorpusFormat::txt_dir);
  CHECK(parse_corpus_format("txt") == CorpusFormat::txt_dir);
  CHECK_FALSE(parse_corpus_format("xml"));
  CHECK(guess_corpus_format("a.ndjson") == CorpusFormat::jsonl);
  CHECK_FALSE(guess_corpus_format("a.weird"));
}

TEST_CASE("score matrices round-trip through CSV and binary") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  ScoreMatrix m({"d1", "d,2", "d\"3"}, {"violence", "threat"});
  for (auto& v : m.values) v = u(rng) / 3.0;
  m.at(0, 0) = 0;
  m.at(1, 1) = 1e-300;

  CHECK(matrix_from_csv(matrix_to_csv(m)) == static_cast<const Matrix&>(m));
  CHECK(matrix_from_binary(matrix_to_binary(m)) == static_cast<const Matrix&>(m));

  test::TempDir dir;
  save_matrix(m, dir / "m.bin");
  save_matrix(m, dir / "m.csv");
  CHECK(load_matrix(dir / "m.bin") == load_matrix(dir / "m.csv"));

  auto bin = matrix_to_binary(m);
  CHECK_THROWS(matrix_from_binary(bin.substr(0, bin.size() - 3)));
  bin[0] = 'X';
  CHECK_THROWS(matrix_from_binary(bin));
  CHECK_THROWS(matrix_from_csv("doc_id,a\nx,notanumber\n"));
}

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> ids, cols;
  for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < rows.front().size(); ++j) cols.push_back("c" + std::to_string(j));
  Matrix m(ids, cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("Cronbach alpha agrees with the covariance formula") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0, 1);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 3 + rng() % 60, k = 2 + rng() % 10;
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    for (auto& r : rows) {
      const double trait = noise(rng);
      for (auto& v : r) v = std::max(0.0, 0.01 + 0.01 * trait + 0.01 * noise(rng));
    }
    const auto want = oracle::alpha_cov(rows);
    REQUIRE(want);
    CHECK_THAT(cronbach_alpha(to_matrix(rows)), WithinAbs(*want, 1e-10));
  }
}

TEST_CASE("Cronbach alpha edge cases") {
  CHECK_THAT(cronbach_alpha(to_matrix({{1, 1, 1}, {2, 2, 2}, {4, 4, 4}})), WithinAbs(1.0, 1e-12));
  CHECK_THAT(cronbach_alpha(to_matrix({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})), WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(cronbach_alpha(to_matrix({{1, 2, 3}})), DegenerateError);
  CHECK_THROWS_AS(cronbach_alpha(to_matrix({{1}, {2}})), DegenerateError);
  CHECK_THROWS_AS(cronbach_alpha(to_matrix({{1, 1}, {1, 1}})), DegenerateError);

  const auto with_constant = to_matrix({{1, 2, 0}, {2, 3, 0}, {4, 4, 0}});
  CHECK_NOTHROW(cronbach_alpha(with_constant));
  CHECK_THROWS_AS(cronbach_alpha(to_matrix({{1, 0}, {2, 0}, {3, 0}}), {true}), DegenerateError);

  const auto avg = average_alpha(std::vector<std::optional<double>>{0.8, std::nullopt, 0.6});
  CHECK_THAT(*avg.mean_alpha, WithinAbs(0.7, 1e-15));
  CHECK_FALSE(average_alpha(std::vector<std::optional<double>>{std::nullopt}).mean_alpha);
}

TEST_CASE("Gwet AC1 matches exact arithmetic for every small table") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask) {
      PairedRatings r{"x", {}};
      for (std::size_t i = 0; i < n; ++i) r.items.emplace_back(mask >> (2 * i) & 1, mask >> (2 * i + 1) & 1);
      const auto got = gwet_ac1(r);
      const auto want = oracle::gwet_ac1_exact(r.items);
      INFO("n=" << n << " mask=" << mask);
      CHECK_THAT(got.ac1, WithinAbs(want.ac1, 1e-12));
      CHECK_THAT(got.variance, WithinAbs(want.variance, 1e-12));
      CHECK(got.ci_low.has_value() == (got.variance > 0));
    }
  }
  PairedRatings perfect{"x", std::vector<std::pair<bool, bool>>(25, {true, true})};
  const auto p = gwet_ac1(perfect);
  CHECK(p.ac1 == 1.0);
  CHECK_FALSE(p.ci_low);
  CHECK(report::render_ac1(p) == "1.00");
  CHECK_THROWS_AS(gwet_ac1(PairedRatings{}), DegenerateError);
}

TEST_CASE("AC1 table for the Dutch agreement sample") {
  const auto expected = nlohmann::json::parse(test::slurp(test::data("agreement/expected.json")))["nl"];
  const auto sample = import_annotation_sheet(test::slurp(test::data("agreement/nl/sample.csv")), "x");
  std::unordered_set<std::string> ids;
  for (const auto& row : sample.sheet.rows) ids.insert(row.id);
  auto first = import_annotations(test::slurp(test::data("merge/nl/decisions.csv")), "first");
  std::erase_if(first, [&](const auto& d) { return !ids.contains(d.record_id); });
  const auto second = import_annotations(test::slurp(test::data("agreement/nl/second.csv")), "second");
  REQUIRE(first.size() == 550);

  const auto rows = agreement_report(agreement_table(first, second));
  REQUIRE(rows.size() == 22);
  for (const auto& r : rows) {
    const auto& e = expected.at(category_key(r.category));
    INFO(r.category);
    CHECK(r.n_items == e.at("n").get<std::size_t>());
    CHECK_THAT(r.ac1, WithinAbs(e.at("ac1").get<double>(), 1e-12));
    CHECK_THAT(r.variance, WithinAbs(e.at("variance").get<double>(), 1e-12));
    CHECK(r.ci_low.has_value() == e.contains("ci_low"));
    if (r.ci_low) {
      CHECK_THAT(*r.ci_low, WithinAbs(e.at("ci_low").get<double>(), 1e-12));
      CHECK_THAT(*r.ci_high, WithinAbs(e.at("ci_high").get<double>(), 1e-12));
    }
  }
}

TEST_CASE("Pearson r and p agree with a multiprecision oracle") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0, 1);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 3 + rng() % 200;
    const double coupling = noise(rng);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = noise(rng);
      y[i] = coupling * x[i] + noise(rng);
    }
    const auto got = pearson(x, y);
    const auto want = oracle::pearson(x, y);
    CHECK_THAT(got.r, WithinAbs(want.r, 1e-12));
    if (want.p > 1e-300) CHECK_THAT(got.p, WithinRel(want.p, 1e-9));
  }
  const std::vector<double> a{1, 2, 3, 4}, flat{2, 2, 2, 2};
  CHECK(pearson(a, a).r == 1.0);
  CHECK(pearson(a, a).p == 0.0);
  CHECK_THROWS_AS(pearson(a, flat), DegenerateError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DegenerateError);
  CHECK_THROWS_AS(pearson(a, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("Bonferroni threshold rendering") {
  CHECK(render_threshold(0.05, 22) == "p < 0.0023");
  CHECK(render_threshold_fraction(0.05, 22) == "p < 0.05/22");
  CHECK_THAT(bonferroni_threshold(0.05, 22), WithinAbs(0.05 / 22, 1e-18));
  CHECK_THROWS(bonferroni_threshold(0.05, 0));
}

namespace {

CorrelationResult sig(std::string companion, double mean, double lo, double hi) {
  CorrelationResult r;
  r.grievance = "violence";
  r.companion = std::move(companion);
  r.r = {lo, hi};
  r.mean_r = mean;
  r.range_low = lo;
  r.range_high = hi;
  r.significant = true;
  return r;
}

}  // namespace

TEST_CASE("top-k correlations rank by absolute mean r") {
  std::vector<CorrelationResult> in{sig("anger", 0.55, 0.29, 0.81), sig("calm", -0.60, -0.7, -0.5),
                                    sig("affect", 0.55, 0.5, 0.6), sig("social", 0.2, 0.1, 0.3)};
  in.back().significant = false;
  const auto top = top_k_correlations(in, 4);
  REQUIRE(top.size() == 4);
  CHECK(top[0]->companion == "calm");
  CHECK(top[1]->companion == "affect");
  CHECK(top[2]->companion == "anger");
  CHECK_FALSE(top[3]);
  CHECK(report::render_correlation_cell(top[0]) == "calm: -0.60 [-0.70--0.50] (negative)");
  CHECK(report::render_correlation_cell(top[2]) == "anger: 0.55 [0.29-0.81]");
  CHECK(report::render_correlation_cell(std::nullopt) == "NS");
}

TEST_CASE("self-correlation is 1 on the diagonal") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  ScoreMatrix s({"a", "b", "c", "d", "e", "f"}, {"x", "y", "z"});
  for (auto& v : s.values) v = u(rng);
  const auto res = correlate_dictionaries({s, s}, {s, s});
  for (const auto& r : res)
    if (r.grievance == r.companion) {
      CHECK(r.mean_r == 1.0);
      CHECK(r.significant);
    }
}

namespace {

struct MiniRun {
  std::vector<ScoreMatrix> grievance, companion;
  std::vector<std::vector<ItemMatrix>> items;
};

MiniRun run_mini() {
  const auto dict = stem_dictionary(
      parse_grievance_csv(test::slurp(test::data("mini/dictionary_nl.csv")), grievance_layout("nl")), "nl");
  DictionaryOptions copts;
  copts.language = "nl";
  const auto comp = parse_liwc_dic(test::slurp(test::data("mini/companion.dic")), copts);
  const Matcher gm(dict), cm(comp);
  MiniRun run;
  for (const auto& [id, file, fmt] : {std::tuple{"corpus_a", "mini/corpus_a.csv", CorpusFormat::csv},
                                      std::tuple{"corpus_b", "mini/corpus_b.jsonl", CorpusFormat::jsonl}}) {
    CorpusOptions o;
    o.id = id;
    o.language = "nl";
    const auto corpus = load_corpus(test::data(file), fmt, o);
    run.grievance.push_back(score_corpus(gm, corpus));
    run.companion.push_back(score_corpus(cm, corpus));
    run.items.push_back(item_matrices(gm, corpus));
  }
  return run;
}

std::optional<double> opt(const nlohmann::json& j) {
  return j.is_null() ? std::nullopt : std::optional(j.get<double>());
}

}  // namespace

TEST_CASE("reliability and correlations on the mini corpora match the reference") {
  const auto expected = nlohmann::json::parse(test::slurp(test::data("golden/mini_expected.json")));
  const auto run = run_mini();

  const auto rel = reliability_table(run.items);
  REQUIRE(rel.size() == 22);
  for (const auto& r : rel) {
    const auto& e = expected["reliability"].at(r.category);
    INFO(r.category);
    REQUIRE(r.alphas.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      const auto want = opt(e["alphas"][j]);
      REQUIRE(r.alphas[j].has_value() == want.has_value());
      if (want) CHECK_THAT(*r.alphas[j], WithinAbs(*want, 1e-10));
    }
    const auto mean = opt(e["mean"]);
    REQUIRE(r.mean_alpha.has_value() == mean.has_value());
    if (mean) CHECK_THAT(*r.mean_alpha, WithinAbs(*mean, 1e-10));
  }

  const auto corr = correlate_dictionaries(run.grievance, run.companion);
  std::size_t compared = 0;
  for (const auto& c : corr) {
    const auto key = c.grievance + "/" + c.companion;
    INFO(key);
    if (c.degenerate) {
      CHECK_FALSE(expected["correlations"].contains(key));
      continue;
    }
    const auto& e = expected["correlations"].at(key);
    for (std::size_t j = 0; j < c.r.size(); ++j) CHECK_THAT(c.r[j], WithinAbs(e["r"][j].get<double>(), 1e-12));
    CHECK_THAT(c.mean_r, WithinAbs(e["mean"].get<double>(), 1e-12));
    CHECK(c.significant == e["significant"].get<bool>());
    ++compared;
  }
  CHECK(compared == expected["correlations"].size());
}
