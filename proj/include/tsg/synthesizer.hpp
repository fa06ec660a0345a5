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
#include <optional>
#include <string>
#include <vector>

#include "tsg/error.hpp"
#include "tsg/extraction_dsl.hpp"

namespace tsg {

/// Limits of the enumerated program space.
struct SynthesisBounds {
  int max_occurrence = 3;    // RegPos occurrence in [-n, -1] U [1, n]
  int abs_window = 4;        // AbsPos only within this many chars of an end
  std::size_t max_atoms = 3;
  std::size_t max_branches = 6;
};

struct ExamplePair {
  std::string input;
  std::string output;
  bool operator==(const ExamplePair&) const = default;
};

struct ExampleSpec {
  std::string component;
  std::string constituent;
  bool repeats = false;
  std::vector<std::string> preprocess;  // "split_pipes", "tag_clauses"
  std::vector<ExamplePair> pairs;
};

/// Thrown when no program in the bounded space covers every example.
class SynthesisError : public Error {
 public:
  SynthesisError(const std::string& message, std::vector<std::size_t> unmet)
      : Error(ErrorKind::SynthesisFailure, message), unmet_(std::move(unmet)) {}

  /// Indices into the example spec's pairs.
  const std::vector<std::size_t>& unmet() const noexcept { return unmet_; }

 private:
  std::vector<std::size_t> unmet_;
};

/// Every bounded position expression that resolves to `i` on `s`, sorted by
/// rank.
std::vector<PositionExpr> positions_resolving_to(const StringIndex& s, std::size_t i,
                                                 const SynthesisBounds& bounds = {});

/// All SubStr atoms extracting some occurrence of `output` from `input`,
/// plus ConstStr(output); deduplicated and sorted by rank. Throws
/// NoOccurrence.
std::vector<Atom> generate_atoms(const std::string& input, const std::string& output,
                                 const SynthesisBounds& bounds = {});

/// Top-ranked branch consistent with every pair, or nullopt.
std::optional<Branch> synthesize_branch(const ExampleSpec& spec,
                                        const SynthesisBounds& bounds = {});

/// Single branch when possible, otherwise a Switch built by greedy
/// partitioning. Throws SynthesisError.
ExtractionProgram synthesize(const ExampleSpec& spec, const SynthesisBounds& bounds = {});

/// Line-delimited JSON: a header record {"component", "constituent",
/// "repeats"[, "preprocess"]} followed by {"input", "output"} records.
ExampleSpec parse_example_spec(const std::string& text);
ExampleSpec load_example_spec(const std::string& path);
std::string serialize_example_spec(const ExampleSpec& spec);

}  // namespace tsg
