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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsg/ingest.hpp"

namespace tsg {

inline constexpr std::size_t kPadIndex = 0;
inline constexpr std::size_t kUnknownIndex = 1;
inline constexpr std::size_t kDefaultMaxLen = 64;

class Vocabulary {
 public:
  Vocabulary();

  std::size_t size() const { return tokens_.size(); }
  std::size_t index_of(const std::string& token) const;  // unknown -> 1
  bool contains(const std::string& token) const;
  const std::string& token_at(std::size_t index) const { return tokens_.at(index); }

  /// Appends a new real token; returns its index.
  std::size_t add(const std::string& token);

  /// `token<TAB>index` per line, sorted by index, including the two
  /// reserved entries.
  std::string serialize() const;
  static Vocabulary parse(const std::string& text);

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct IndexSequence {
  std::vector<std::size_t> indices;
  std::size_t true_len = 0;

  bool operator==(const IndexSequence&) const = default;
};

struct BowVector {
  std::map<std::size_t, std::size_t> counts;

  bool operator==(const BowVector&) const = default;
};

/// Indices assigned by descending frequency, ties lexicographic, starting
/// at 2. Throws EmptyCorpus.
Vocabulary build_vocabulary(std::span<const Statement> corpus,
                            std::size_t min_freq = 1);

IndexSequence encode(const Statement& stmt, const Vocabulary& vocab,
                     std::size_t max_len = kDefaultMaxLen);

BowVector bow(const Statement& stmt, const Vocabulary& vocab);

}  // namespace tsg
