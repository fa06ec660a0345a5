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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsg/metric_model.hpp"
#include "tsg/vectorize.hpp"

namespace tsg {

/// Lowercase component-type name, e.g. "kusto". The seven built-in types
/// are listed in `builtin_component_types()`; any other valid name may be
/// used as an extension.
class ComponentType {
 public:
  ComponentType() = default;
  explicit ComponentType(std::string name);

  const std::string& name() const { return name_; }
  auto operator<=>(const ComponentType&) const = default;

 private:
  std::string name_;
};

inline const std::string kNaturalLanguage = "natural_language";

const std::vector<std::string>& builtin_component_types();
bool is_valid_component_name(const std::string& name);

using SupportSet = std::map<std::string, std::vector<IndexSequence>>;

struct Prototype {
  std::string component;
  Embedding vector;
  std::size_t support_count = 0;

  bool operator==(const Prototype&) const = default;
};

struct Classification {
  std::string label;
  double similarity = 0.0;
  std::map<std::string, double> per_class;
};

/// Per class, the coordinate-wise mean embedding of its support examples.
/// Throws EmptyClass.
std::vector<Prototype> compute_prototypes(const SiameseModel& model,
                                          const SupportSet& support);

/// Similarity to every prototype; label is the argmax, ties going to the
/// lexicographically smallest class. Throws NoPrototypes.
Classification classify(const SiameseModel& model,
                        std::span<const Prototype> protos,
                        const IndexSequence& x);

/// Same as above for a precomputed embedding.
Classification classify_embedding(std::span<const Prototype> protos,
                                  const Embedding& e);

/// Majority vote of the k cosine-nearest bag-of-words neighbours.
std::string knn_bow_classify(
    std::span<const std::pair<BowVector, std::string>> train,
    const BowVector& x, std::size_t k);

double cosine_distance(const BowVector& a, const BowVector& b);

/// `class<TAB>support_count<TAB>comma-separated floats` per line.
std::string serialize_prototypes(std::span<const Prototype> protos);
std::vector<Prototype> parse_prototypes(const std::string& text);

}  // namespace tsg
