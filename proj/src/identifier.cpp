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

#include "tsg/identifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "tsg/error.hpp"
#include "tsg/ingest.hpp"

namespace tsg {

ComponentType::ComponentType(std::string name) : name_(std::move(name)) {
  if (!is_valid_component_name(name_)) {
    throw Error(ErrorKind::InvalidArgument, "invalid component type '" + name_ + "'");
  }
}

const std::vector<std::string>& builtin_component_types() {
  static const std::vector<std::string> types = {
      "adf", "jarvis", "kusto", "powershell", "torus", "merlin", kNaturalLanguage};
  return types;
}

bool is_valid_component_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::vector<Prototype> compute_prototypes(const SiameseModel& model,
                                          const SupportSet& support) {
  std::vector<Prototype> protos;
  for (const auto& [name, examples] : support) {
    if (examples.empty()) {
      throw Error(ErrorKind::EmptyClass, "class '" + name + "' has no support examples");
    }
    Prototype p{name, Embedding(model.shape.dense_dim, 0.0), examples.size()};
    for (const auto& x : examples) {
      const Embedding e = embed(model, x);
      for (std::size_t i = 0; i < e.size(); ++i) p.vector[i] += e[i];
    }
    const double n = static_cast<double>(examples.size());
    for (auto& v : p.vector) v /= n;
    protos.push_back(std::move(p));
  }
  return protos;
}

Classification classify_embedding(std::span<const Prototype> protos,
                                  const Embedding& e) {
  if (protos.empty()) throw Error(ErrorKind::NoPrototypes, "no prototypes loaded");
  Classification c;
  for (const auto& p : protos) {
    c.per_class[p.component] = std::exp(-l1_distance(e, p.vector));
  }
  // std::map iterates in lexicographic order, so a strict comparison keeps
  // the smallest name on ties.
  bool first = true;
  for (const auto& [name, sim] : c.per_class) {
    if (first || sim > c.similarity) {
      c.label = name;
      c.similarity = sim;
      first = false;
    }
  }
  return c;
}

Classification classify(const SiameseModel& model,
                        std::span<const Prototype> protos,
                        const IndexSequence& x) {
  if (protos.empty()) throw Error(ErrorKind::NoPrototypes, "no prototypes loaded");
  return classify_embedding(protos, embed(model, x));
}

double cosine_distance(const BowVector& a, const BowVector& b) {
  double dotp = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [i, n] : a.counts) {
    na += static_cast<double>(n) * static_cast<double>(n);
    if (auto it = b.counts.find(i); it != b.counts.end()) {
      dotp += static_cast<double>(n) * static_cast<double>(it->second);
    }
  }
  for (const auto& [i, n] : b.counts) nb += static_cast<double>(n) * static_cast<double>(n);
  if (na == 0.0 || nb == 0.0) return 1.0;
  return 1.0 - dotp / (std::sqrt(na) * std::sqrt(nb));
}

std::string knn_bow_classify(
    std::span<const std::pair<BowVector, std::string>> train,
    const BowVector& x, std::size_t k) {
  if (train.empty()) throw Error(ErrorKind::EmptyTrainingSet, "no training vectors");
  if (k < 1 || k > train.size()) {
    throw Error(ErrorKind::InvalidArgument, "k must be in [1, |train|]");
  }
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    dist.emplace_back(cosine_distance(train[i].first, x), i);
  }
  // Pairs compare by distance and then by training index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                    dist.end());
  std::map<std::string, std::size_t> votes;
  for (std::size_t i = 0; i < k; ++i) ++votes[train[dist[i].second].second];
  std::string best;
  std::size_t best_votes = 0;
  for (const auto& [label, n] : votes) {
    if (n > best_votes) {
      best = label;
      best_votes = n;
    }
  }
  return best;
}

std::string serialize_prototypes(std::span<const Prototype> protos) {
  std::string out;
  char buf[40];
  for (const auto& p : protos) {
    out += p.component;
    out += '\t';
    out += std::to_string(p.support_count);
    out += '\t';
    for (std::size_t i = 0; i < p.vector.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", p.vector[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<Prototype> parse_prototypes(const std::string& text) {
  std::vector<Prototype> protos;
  for (const auto& line : split_lines(text)) {
    if (trim(line).empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorKind::Format, "prototype line needs three fields");
    }
    Prototype p;
    p.component = line.substr(0, t1);
    try {
      p.support_count = std::stoul(line.substr(t1 + 1, t2 - t1 - 1));
      std::size_t begin = t2 + 1;
      while (begin <= line.size()) {
        auto comma = line.find(',', begin);
        if (comma == std::string::npos) comma = line.size();
        p.vector.push_back(std::stod(line.substr(begin, comma - begin)));
        begin = comma + 1;
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Format, "bad number in prototype line for " + p.component);
    }
    if (p.support_count == 0) throw Error(ErrorKind::Format, "prototype support_count is 0");
    protos.push_back(std::move(p));
  }
  return protos;
}

}  // namespace tsg
