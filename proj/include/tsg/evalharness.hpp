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

// Cross-validated classification metrics and parsing precision/recall.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsg/constituent_extractor.hpp"
#include "tsg/ingest.hpp"
#include "tsg/metric_model.hpp"
#include "tsg/synthesizer.hpp"

namespace tsg {

struct LabeledExample {
  Statement stmt;
  std::string label;
};

struct LabeledCorpus {
  std::vector<LabeledExample> examples;
  std::map<std::string, std::size_t> caps;  // class -> max count
};

/// Line-delimited {"text": ..., "label": ...}. Throws Error(Format).
LabeledCorpus parse_corpus(const std::string& text);
LabeledCorpus load_corpus(const std::string& path);

/// Seeded subsample of every capped class down to its cap; surviving
/// examples keep their corpus order.
LabeledCorpus apply_caps(const LabeledCorpus& corpus, std::uint64_t seed);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct Metrics {
  std::map<std::string, ClassMetrics> per_class;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  std::size_t total = 0;
};

/// Metrics from aligned truth/prediction lists. Classes are those seen in
/// either list.
Metrics compute_metrics(std::span<const std::string> truth, std::span<const std::string> pred);

/// Fold id in [0, k) per example: each class is shuffled with the seed and
/// dealt round-robin. Throws ClassTooSmall when a class has fewer than k
/// examples.
std::vector<std::size_t> stratified_folds(std::span<const std::string> labels, std::size_t k,
                                          std::uint64_t seed);

using Predictor = std::function<std::string(const Statement&)>;
/// Builds a predictor from the training folds; the second argument is the
/// held-out fold index.
using Learner = std::function<Predictor(std::span<const LabeledExample>, std::size_t)>;

struct FoldResult {
  Metrics metrics;
  std::vector<std::string> predictions;  // per corpus example
  std::vector<std::size_t> folds;
};

/// Pooled over all held-out predictions. Throws ClassTooSmall.
FoldResult kfold_eval(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed,
                      const Learner& learner);

struct SiameseOptions {
  Hyper hyper;
  ModelShape shape;
  std::size_t pairs = 1024;  // training pairs sampled per model
};

/// Vocabulary, metric model and prototypes built from the training split.
Learner siamese_learner(const SiameseOptions& opts);

/// Cosine k-nearest-neighbour vote over bag-of-words vectors.
Learner knn_bow_learner(std::size_t k);

struct ParsingTestCase {
  std::string text;
  std::string component;
  ParsedComponent expected;
};

struct ParsingScore {
  std::size_t extracted = 0;
  std::size_t expected = 0;
  std::size_t correct = 0;
  std::size_t cases = 0;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_undefined = false;  // nothing extracted
};

struct ParsingReport {
  std::map<std::string, ParsingScore> per_component;
  ParsingScore overall;
};

/// Throws OverlapDetected when a test input is also a spec input.
ParsingReport parsing_report(std::span<const ExampleSpec> specs, const ParserRegistry& registry,
                             std::span<const ParsingTestCase> testset,
                             const ClauseLexicon& lex = ClauseLexicon::builtin());

/// Line-delimited {"text", "component", "constituents": {name: value or
/// list}}.
std::vector<ParsingTestCase> parse_parsing_testset(const std::string& text);
std::vector<ParsingTestCase> load_parsing_testset(const std::string& path);

std::string metrics_table(const std::map<std::string, Metrics>& by_model);
std::string metrics_json(const std::map<std::string, Metrics>& by_model);
std::string parsing_table(const ParsingReport& r);
std::string parsing_json(const ParsingReport& r);

}  // namespace tsg
