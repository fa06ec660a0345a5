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

#include "tsg/vectorize.hpp"

#include <algorithm>
#include <sstream>

#include "tsg/error.hpp"

namespace tsg {

Vocabulary::Vocabulary() : tokens_{"<pad>", "<unk>"} {}

std::size_t Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnknownIndex : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
  return index_.count(token) != 0;
}

std::size_t Vocabulary::add(const std::string& token) {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  const std::size_t idx = tokens_.size();
  tokens_.push_back(token);
  index_.emplace(token, idx);
  return idx;
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::parse(const std::string& text) {
  Vocabulary v;
  std::size_t expected = 0;
  for (const auto& line : split_lines(text)) {
    if (line.empty()) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::Format, "vocabulary line without tab: " + line);
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Format, "bad vocabulary index: " + line);
    }
    if (idx != expected) {
      throw Error(ErrorKind::Format, "vocabulary indices must be dense and sorted");
    }
    ++expected;
    if (idx >= 2) v.add(line.substr(0, tab));
  }
  if (expected < 2) throw Error(ErrorKind::Format, "vocabulary misses reserved entries");
  return v;
}

Vocabulary build_vocabulary(std::span<const Statement> corpus,
                            std::size_t min_freq) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "no statements");
  if (min_freq < 1) throw Error(ErrorKind::InvalidArgument, "min_freq must be >= 1");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> entries;
  for (auto& [tok, n] : freq) {
    if (n >= min_freq) entries.emplace_back(tok, n);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  for (const auto& e : entries) v.add(e.first);
  return v;
}

IndexSequence encode(const Statement& stmt, const Vocabulary& vocab,
                     std::size_t max_len) {
  if (max_len < 1) throw Error(ErrorKind::InvalidArgument, "max_len must be >= 1");
  IndexSequence seq;
  seq.indices.assign(max_len, kPadIndex);
  seq.true_len = std::min(stmt.tokens.size(), max_len);
  for (std::size_t i = 0; i < seq.true_len; ++i) {
    seq.indices[i] = vocab.index_of(stmt.tokens[i]);
  }
  return seq;
}

BowVector bow(const Statement& stmt, const Vocabulary& vocab) {
  BowVector v;
  for (const auto& t : stmt.tokens) ++v.counts[vocab.index_of(t)];
  return v;
}

}  // namespace tsg
