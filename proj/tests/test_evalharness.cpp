// Copyright 2026 The tsgauto Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "synth_oracle.hpp"
#include "tsg/evalharness.hpp"
#include "tsg/identifier.hpp"
#include "tsg/io.hpp"

using namespace tsg;

namespace {

const LabeledCorpus& corpus() {
  static const LabeledCorpus c = load_corpus(TSG_SOURCE_DIR "/data/corpus.jsonl");
  return c;
}

std::vector<std::string> labels_of(const LabeledCorpus& c) {
  std::vector<std::string> out;
  for (const auto& e : c.examples) out.push_back(e.label);
  return out;
}

const ParserRegistry& bundled() {
  static const ParserRegistry reg = load_registry(TSG_SOURCE_DIR "/data/registry.tsv");
  return reg;
}

std::vector<ExampleSpec> bundled_specs() {
  std::vector<ExampleSpec> out;
  for (auto& [_, s] : oracle::load_specs(TSG_SOURCE_DIR "/data/specs")) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("bundled corpus covers seven classes with at least thirty lines each") {
  std::map<std::string, std::size_t> n;
  for (const auto& e : corpus().examples) ++n[e.label];
  CHECK(n.size() == 7);
  for (const auto& [label, count] : n) {
    INFO(label);
    CHECK(count >= 30);
  }
}

TEST_CASE("perfect and constant predictions") {
  const auto truth = labels_of(corpus());
  auto m = compute_metrics(truth, truth);
  CHECK(m.accuracy == 1.0);
  CHECK(m.macro_f1 == 1.0);
  for (const auto& [_, cm] : m.per_class) CHECK(cm.f1 == 1.0);

  std::vector<std::string> balanced, constant;
  for (const auto& c : builtin_component_types()) {
    for (int i = 0; i < 10; ++i) balanced.push_back(c);
  }
  constant.assign(balanced.size(), "kusto");
  m = compute_metrics(balanced, constant);
  CHECK(m.accuracy == doctest::Approx(1.0 / 7.0));
  CHECK(m.per_class.at("kusto").recall == 1.0);
  CHECK(m.per_class.at("adf").recall == 0.0);
  CHECK_THROWS_AS(compute_metrics(balanced, std::vector<std::string>{"x"}), Error);
}

TEST_CASE("metrics match a confusion-matrix computation") {
  const std::vector<std::string> classes{"a", "b", "c", "d"};
  std::mt19937 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 60;
    std::vector<std::string> truth, pred;
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(classes[gen() % 3]);
      pred.push_back(classes[gen() % 4]);
    }
    std::map<std::string, std::map<std::string, int>> cm;
    for (std::size_t i = 0; i < n; ++i) ++cm[truth[i]][pred[i]];
    const auto m = compute_metrics(truth, pred);
    int diag = 0;
    double f1_sum = 0.0;
    std::set<std::string> seen(truth.begin(), truth.end());
    seen.insert(pred.begin(), pred.end());
    for (const auto& c : seen) {
      const int tp = cm[c][c];
      diag += tp;
      int row = 0, col = 0;
      for (const auto& d : classes) {
        row += cm[c][d];
        col += cm[d][c];
      }
      const double p = col ? static_cast<double>(tp) / col : 0.0;
      const double r = row ? static_cast<double>(tp) / row : 0.0;
      const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
      f1_sum += f;
      CHECK(m.per_class.at(c).precision == doctest::Approx(p));
      CHECK(m.per_class.at(c).recall == doctest::Approx(r));
      CHECK(m.per_class.at(c).f1 == doctest::Approx(f));
      CHECK(m.per_class.at(c).support == static_cast<std::size_t>(row));
    }
    CHECK(m.accuracy == doctest::Approx(static_cast<double>(diag) / static_cast<double>(n)));
    CHECK(m.macro_f1 == doctest::Approx(f1_sum / static_cast<double>(seen.size())));
  }
}

TEST_CASE("stratified folds partition the corpus evenly") {
  const auto labels = labels_of(corpus());
  for (std::uint64_t seed : {1u, 42u, 7u}) {
    for (std::size_t k : {2u, 5u, 10u}) {
      const auto folds = stratified_folds(labels, k, seed);
      REQUIRE(folds.size() == labels.size());
      std::map<std::string, std::vector<std::size_t>> per;
      std::vector<std::size_t> sizes(k, 0);
      std::map<std::string, std::size_t> class_total;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        REQUIRE(folds[i] < k);
        ++sizes[folds[i]];
        ++class_total[labels[i]];
        auto& v = per[labels[i]];
        v.resize(k, 0);
        ++v[folds[i]];
      }
      for (const auto& [label, counts] : per) {
        const double share = static_cast<double>(class_total[label]) / static_cast<double>(k);
        for (std::size_t c : counts) CHECK(std::abs(static_cast<double>(c) - share) <= 1.0);
      }
      const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
      CHECK(*hi - *lo <= 1);
      CHECK(stratified_folds(labels, k, seed) == folds);
    }
  }
  CHECK_THROWS_AS(stratified_folds(labels, 1, 1), Error);
  try {
    stratified_folds(std::vector<std::string>{"a", "a", "b"}, 3, 1);
    FAIL("expected ClassTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClassTooSmall);
  }
}

TEST_CASE("kfold with an oracle learner is perfect and knn runs on identical folds") {
  std::map<std::string, std::string> answer;
  for (const auto& e : corpus().examples) answer[e.stmt.raw] = e.label;
  const Learner perfect = [&](std::span<const LabeledExample>, std::size_t) -> Predictor {
    return [&](const Statement& s) { return answer.at(s.raw); };
  };
  const auto r = kfold_eval(corpus(), 5, 42, perfect);
  CHECK(r.metrics.accuracy == 1.0);
  const auto knn = kfold_eval(corpus(), 5, 42, knn_bow_learner(3));
  CHECK(knn.folds == r.folds);
  CHECK(knn.predictions.size() == corpus().examples.size());
  CHECK(knn.metrics.accuracy > 0.5);
  const auto text = metrics_table({{"knn_bow", knn.metrics}});
  CHECK(text.find("accuracy") != std::string::npos);
  CHECK(metrics_json({{"knn_bow", knn.metrics}}).find("\"knn_bow\"") != std::string::npos);
}

TEST_CASE("caps keep a seeded subset of a class") {
  LabeledCorpus c = corpus();
  c.caps["natural_language"] = 10;
  const auto capped = apply_caps(c, 5);
  std::size_t nl = 0;
  for (const auto& e : capped.examples) nl += e.label == "natural_language";
  CHECK(nl == 10);
  CHECK(capped.examples.size() == corpus().examples.size() - 35);
  const auto again = apply_caps(c, 5);
  for (std::size_t i = 0; i < capped.examples.size(); ++i) {
    CHECK(again.examples[i].stmt.raw == capped.examples[i].stmt.raw);
  }
}

TEST_CASE("corpus parsing errors") {
  CHECK_THROWS_AS(parse_corpus(""), Error);
  CHECK_THROWS_AS(parse_corpus("{\"text\":\"a\",\"label\":\"Bad Label\"}"), Error);
  CHECK_THROWS_AS(parse_corpus("{\"text\":\"  \",\"label\":\"kusto\"}"), Error);
  CHECK_THROWS_AS(parse_corpus("[1]"), Error);
}

TEST_CASE("parsing report conventions") {
  // Expectations built from the registry's own output score 1.0 / 1.0.
  std::vector<ParsingTestCase> tests;
  for (const auto& c : load_parsing_testset(TSG_SOURCE_DIR "/data/parsing_testset.jsonl")) {
    ParsingTestCase t = c;
    t.expected = extract(make_statement(c.text), c.component, bundled());
    tests.push_back(std::move(t));
  }
  const auto specs = bundled_specs();
  auto r = parsing_report(specs, bundled(), tests);
  CHECK(r.overall.precision == 1.0);
  CHECK(r.overall.recall == 1.0);

  const auto empty = parsing_report(specs, ParserRegistry{},
                                    load_parsing_testset(TSG_SOURCE_DIR "/data/parsing_testset.jsonl"));
  CHECK(empty.overall.precision == 0.0);
  CHECK(empty.overall.precision_undefined);
  CHECK(empty.overall.recall == 0.0);
  CHECK(parsing_table(empty).find("n/a") != std::string::npos);

  ParsingTestCase leak;
  leak.text = specs[0].pairs[0].input;
  leak.component = specs[0].component;
  CHECK_THROWS_AS(parsing_report(specs, bundled(), std::vector<ParsingTestCase>{leak}), Error);
}

TEST_CASE("bundled parsing report matches the golden file") {
  const auto r = parsing_report(bundled_specs(), bundled(),
                                load_parsing_testset(TSG_SOURCE_DIR "/data/parsing_testset.jsonl"));
  CHECK(parsing_json(r) == read_file(TSG_SOURCE_DIR "/tests/golden/parsing_report.json"));
}
