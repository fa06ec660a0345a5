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

#include <cmath>

#include "model_oracle.hpp"
#include "tsg/evalharness.hpp"
#include "tsg/metric_model.hpp"

using tsg::IndexSequence;
using tsg::ModelShape;

namespace {

const ModelShape kMini{4, 3, 3, 5};

std::vector<std::pair<IndexSequence, std::string>> tiny_examples() {
  auto seq = [](std::vector<std::size_t> v) {
    IndexSequence s;
    s.true_len = v.size();
    s.indices = std::move(v);
    s.indices.resize(8, 0);
    return s;
  };
  return {{seq({2, 3}), "x"}, {seq({2, 4}), "x"}, {seq({5, 6}), "y"}, {seq({6, 7, 5}), "y"}};
}

}  // namespace

TEST_CASE("zero network outputs one half everywhere") {
  auto m = tsg::init_model(10, tsg::Hyper{}, kMini);
  m.params = m.params.zeros_like();
  const auto e = tsg::embed(m, oracle::random_sequence(10, 8, 3));
  REQUIRE(e.size() == kMini.dense_dim);
  for (double v : e) CHECK(v == 0.5);
}

TEST_CASE("embedding is deterministic and matches the naive forward pass") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = oracle::random_model(12, {6, 4, 3, 7}, 9, seed, 0.5);
    const auto x = oracle::random_sequence(12, 9, seed + 100);
    const auto a = tsg::embed(m, x);
    CHECK(a == tsg::embed(m, x));
    const auto b = oracle::naive_embed(m, x);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
  }
}

TEST_CASE("default-shape embedding matches the naive forward pass") {
  const auto m = tsg::init_model(30, tsg::Hyper{});
  const auto x = oracle::random_sequence(30, tsg::kDefaultMaxLen, 5);
  const auto a = tsg::embed(m, x);
  const auto b = oracle::naive_embed(m, x);
  REQUIRE(a.size() == 128);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
}

TEST_CASE("out-of-vocabulary index is rejected") {
  const auto m = tsg::init_model(5, tsg::Hyper{}, kMini);
  IndexSequence x{{1, 9}, 2};
  CHECK_THROWS_AS(tsg::embed(m, x), tsg::Error);
}

TEST_CASE("similarity closed forms") {
  const std::vector<double> a{0.5, 0.2, 0.9};
  const std::vector<double> b{1.5, 1.2, 1.9};
  CHECK(std::exp(-tsg::l1_distance(a, a)) == 1.0);
  CHECK(std::exp(-tsg::l1_distance(a, b)) == doctest::Approx(0.049787).epsilon(1e-6));
  const auto m = oracle::random_model(10, kMini, 8, 1, 0.5);
  const auto x = oracle::random_sequence(10, 8, 2);
  CHECK(tsg::pair_similarity(m, x, x) == 1.0);
}

TEST_CASE("similarity is symmetric, bounded and reflexive over random pairs") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto m = oracle::random_model(10, kMini, 8, t, 1.0);
    const auto x = oracle::random_sequence(10, 8, 2 * t + 1);
    const auto y = oracle::random_sequence(10, 8, 2 * t + 2);
    const double p = tsg::pair_similarity(m, x, y);
    const double q = tsg::pair_similarity(m, y, x);
    CHECK(std::abs(p - q) <= 1e-12);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    CHECK(tsg::pair_similarity(m, x, x) == 1.0);
  }
}

TEST_CASE("pair loss values") {
  CHECK(tsg::pair_loss(0.5, 1) == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(tsg::pair_loss(1.0, 1) < 1e-6);
  CHECK(tsg::pair_loss(0.9, 0) == doctest::Approx(2.302585).epsilon(1e-6));
  CHECK(std::isfinite(tsg::pair_loss(0.0, 1)));
  CHECK(std::isfinite(tsg::pair_loss(1.0, 0)));
}

TEST_CASE("analytic gradient agrees with central differences") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m = oracle::random_model(10, kMini, 8, seed, 0.5);
    tsg::TrainingPair pair{oracle::random_sequence(10, 8, 10 + seed),
                           oracle::random_sequence(10, 8, 20 + seed), static_cast<int>(seed % 2)};
    const auto err = oracle::gradient_relative_error(m, pair, 1e-5);
    for (std::size_t k = 0; k < err.size(); ++k) {
      INFO("tensor " << tsg::Parameters::kNames[k] << " seed " << seed);
      CHECK(err[k] < 1e-4);
    }
  }
}

TEST_CASE("pair sampling is balanced and seeded") {
  const auto ex = tiny_examples();
  const auto pairs = tsg::sample_pairs(ex, 1, 4);
  REQUIRE(pairs.size() == 4);
  int pos = 0;
  for (const auto& p : pairs) pos += p.label;
  CHECK(pos == 2);
  const auto again = tsg::sample_pairs(ex, 1, 4);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].a == again[i].a);
    CHECK(pairs[i].b == again[i].b);
    CHECK(pairs[i].label == again[i].label);
  }
  std::vector<std::pair<IndexSequence, std::string>> one_class{ex[0], ex[1]};
  CHECK_THROWS_AS(tsg::sample_pairs(one_class, 1, 4), tsg::Error);
}

TEST_CASE("pair labels agree with classes on the bundled corpus") {
  const auto corpus = tsg::load_corpus(TSG_SOURCE_DIR "/data/corpus.jsonl");
  std::vector<tsg::Statement> stmts;
  for (const auto& e : corpus.examples) stmts.push_back(e.stmt);
  const auto vocab = tsg::build_vocabulary(stmts);
  std::vector<std::pair<IndexSequence, std::string>> ex;
  for (const auto& e : corpus.examples) ex.emplace_back(tsg::encode(e.stmt, vocab), e.label);
  const auto pairs = tsg::sample_pairs(ex, 42, 2000);
  std::size_t pos = 0;
  for (const auto& p : pairs) {
    pos += static_cast<std::size_t>(p.label);
    if (p.label == 0) CHECK_FALSE(p.a == p.b);
  }
  CHECK(pos + 1 >= 1000);
  CHECK(pos <= 1001);
}

TEST_CASE("training is seeded and a zero learning rate keeps the initializer") {
  const auto pairs = tsg::sample_pairs(tiny_examples(), 3, 16);
  tsg::Hyper h;
  h.max_len = 8;
  h.epochs = 3;
  h.batch_size = 4;
  h.seed = 11;
  const auto a = tsg::train(pairs, 10, h, kMini);
  const auto b = tsg::train(pairs, 10, h, kMini);
  CHECK(tsg::serialize_model(a.model) == tsg::serialize_model(b.model));
  CHECK(a.epoch_loss.size() == 3);

  h.learning_rate = 0.0;
  const auto frozen = tsg::train(pairs, 10, h, kMini);
  CHECK(frozen.model.params == tsg::init_model(10, h, kMini).params);
}

TEST_CASE("training lowers the loss on a separable toy problem") {
  const auto pairs = tsg::sample_pairs(tiny_examples(), 3, 64);
  tsg::Hyper h;
  h.max_len = 8;
  h.epochs = 40;
  h.batch_size = 8;
  h.learning_rate = 1e-2;
  const auto r = tsg::train(pairs, 10, h, kMini);
  CHECK(r.epoch_loss.back() < r.epoch_loss.front());
}

TEST_CASE("training needs both pair labels") {
  auto pairs = tsg::sample_pairs(tiny_examples(), 3, 4);
  std::vector<tsg::TrainingPair> pos, neg;
  for (const auto& p : pairs) (p.label ? pos : neg).push_back(p);
  CHECK_THROWS_AS(tsg::train(pos, 10, tsg::Hyper{}, kMini), tsg::Error);
  CHECK_THROWS_AS(tsg::train(neg, 10, tsg::Hyper{}, kMini), tsg::Error);
}

TEST_CASE("model serialization round-trips and rejects damage") {
  const auto m = oracle::random_model(10, kMini, 8, 4, 0.5);
  const auto bytes = tsg::serialize_model(m);
  CHECK(tsg::parse_model(bytes) == m);
  CHECK(tsg::content_hash(bytes) == tsg::content_hash(tsg::serialize_model(tsg::parse_model(bytes))));
  CHECK_THROWS_AS(tsg::parse_model(bytes.substr(0, bytes.size() - 3)), tsg::Error);
  CHECK_THROWS_AS(tsg::parse_model("garbage"), tsg::Error);
  CHECK_THROWS_AS(tsg::parse_model(bytes + "x"), tsg::Error);
}
