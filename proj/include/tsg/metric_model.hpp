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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsg/vectorize.hpp"

namespace tsg {

/// Layer sizes of the embedding network. The defaults are the production
/// architecture; tests shrink them for exhaustive gradient checks.
struct ModelShape {
  std::size_t embed_dim = 100;
  std::size_t filters = 64;
  std::size_t kernel = 3;
  std::size_t dense_dim = 128;

  bool operator==(const ModelShape&) const = default;
};

struct Hyper {
  std::size_t max_len = kDefaultMaxLen;
  std::uint64_t seed = 42;
  double learning_rate = 3e-3;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double init_scale = 0.05;  // half-width of the uniform initializer

  bool operator==(const Hyper&) const = default;
};

/// All learnable tensors, in serialization order. Also used for gradients
/// and optimizer moments.
struct Parameters {
  std::vector<double> embedding;  // vocab x embed_dim
  std::vector<double> conv1_w;    // filters x kernel x embed_dim
  std::vector<double> conv1_b;    // filters
  std::vector<double> conv2_w;    // filters x kernel x filters
  std::vector<double> conv2_b;    // filters
  std::vector<double> dense_w;    // filters x dense_dim
  std::vector<double> dense_b;    // dense_dim

  static constexpr std::size_t kTensorCount = 7;
  static constexpr std::array<const char*, kTensorCount> kNames = {
      "embedding", "conv1.w", "conv1.b", "conv2.w",
      "conv2.b",   "dense.w", "dense.b"};

  std::array<std::vector<double>*, kTensorCount> tensors() {
    return {&embedding, &conv1_w, &conv1_b, &conv2_w, &conv2_b, &dense_w, &dense_b};
  }
  std::array<const std::vector<double>*, kTensorCount> tensors() const {
    return {&embedding, &conv1_w, &conv1_b, &conv2_w, &conv2_b, &dense_w, &dense_b};
  }

  /// Same shapes, all zero.
  Parameters zeros_like() const;

  bool operator==(const Parameters&) const = default;
};

Parameters make_parameters(std::size_t vocab_size, const ModelShape& shape);

struct SiameseModel {
  std::size_t vocab_size = 0;
  ModelShape shape;
  Hyper hyper;
  Parameters params;

  bool operator==(const SiameseModel&) const = default;
};

struct TrainingPair {
  IndexSequence a;
  IndexSequence b;
  int label = 0;  // 1 when both sides share a component type
};

using Embedding = std::vector<double>;

inline constexpr double kProbabilityEpsilon = 1e-7;

/// Seeded uniform(-init_scale, init_scale) initialization.
SiameseModel init_model(std::size_t vocab_size, const Hyper& hyper,
                        const ModelShape& shape = {});

/// Embedding lookup, two conv/ReLU/max-pool stages, global max over
/// positions, dense layer, sigmoid. Throws IndexOutOfVocab.
Embedding embed(const SiameseModel& model, const IndexSequence& x);

double l1_distance(std::span<const double> a, std::span<const double> b);

/// exp(-L1(f(a), f(b))).
double pair_similarity(const SiameseModel& model, const IndexSequence& a,
                       const IndexSequence& b);

/// Binary cross-entropy with p clamped to [eps, 1 - eps].
double pair_loss(double p, int y);

struct PairGradient {
  double loss = 0.0;
  double similarity = 0.0;
  Parameters grad;
};

/// Loss of one pair and its gradient with respect to every parameter.
PairGradient pair_loss_gradient(const SiameseModel& model,
                                const TrainingPair& pair);

struct TrainResult {
  SiameseModel model;
  std::vector<double> epoch_loss;  // mean pair loss per epoch
};

/// Mini-batch Adam over the given pairs (reshuffled every epoch).
TrainResult train(std::span<const TrainingPair> pairs, std::size_t vocab_size,
                  const Hyper& hyper, const ModelShape& shape = {});

/// Half positive, half negative pairs (positives first when n is odd),
/// interleaved. Throws SingleClassCorpus.
std::vector<TrainingPair> sample_pairs(
    std::span<const std::pair<IndexSequence, std::string>> examples,
    std::uint64_t seed, std::size_t n_pairs);

std::string serialize_model(const SiameseModel& model);
SiameseModel parse_model(const std::string& bytes);
void save_model(const SiameseModel& model, const std::string& path);
SiameseModel load_model(const std::string& path);

/// FNV-1a 64 of the serialized model, as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace tsg
