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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tsg/clause_tagger.hpp"
#include "tsg/error.hpp"
#include "tsg/extraction_dsl.hpp"
#include "tsg/ingest.hpp"
#include "tsg/synthesizer.hpp"

namespace tsg {

struct ParserEntry {
  std::string component;
  std::string constituent;
  ExtractionProgram program;
  bool repeats = false;
  bool split_pipes = false;
  bool tag_clauses = false;

  bool operator==(const ParserEntry&) const = default;
};

/// Synthesized parsers keyed by (component, constituent).
class ParserRegistry {
 public:
  /// Adds or replaces the entry for (component, constituent).
  void put(ParserEntry entry);

  bool has_component(const std::string& component) const;
  std::vector<const ParserEntry*> entries_for(const std::string& component) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::pair<std::string, std::string>, ParserEntry>& entries() const {
    return entries_;
  }

  /// `tsg-registry 1` header, then one tab-separated line per entry:
  /// component, constituent, repeats (0/1), flags (comma list or -), program.
  std::string serialize() const;
  static ParserRegistry parse(const std::string& text);

  bool operator==(const ParserRegistry&) const = default;

 private:
  std::map<std::pair<std::string, std::string>, ParserEntry> entries_;
};

ParserRegistry load_registry(const std::string& path);
void save_registry(const ParserRegistry& registry, const std::string& path);

/// Synthesizes the parser described by a spec, tagging inputs first when
/// the example spec asks for clause tagging. Throws SynthesisError.
ParserEntry learn_parser(const ExampleSpec& spec, const SynthesisBounds& bounds = {},
                         const ClauseLexicon& lex = ClauseLexicon::builtin());

/// Single value, or the ordered list of a repeating constituent.
using ConstituentValue = std::variant<std::string, std::vector<std::string>>;

struct ParsedComponent {
  std::string component;
  std::map<std::string, ConstituentValue> constituents;
  std::set<std::string> missing;
  std::vector<Warning> warnings;

  bool has(const std::string& name) const { return constituents.count(name) != 0; }
};

struct ExtractOptions {
  std::size_t max_iterations = 100;
};

struct RepeatResult {
  std::vector<std::vector<std::string>> tuples;
  bool limit_reached = false;
};

/// Repeatedly applies the first-constituent parsers, deleting what they
/// extract, until one of them fails or yields an empty value.
RepeatResult extract_repeating(std::string_view text, std::span<const ExtractionProgram> parsers,
                               std::size_t max_iterations = 100);

/// Splits on `|` outside single or double quotes; segments are trimmed and
/// empty ones dropped.
std::vector<std::string> split_pipes(std::string_view text);

ParsedComponent extract(const Statement& stmt, const std::string& component,
                        const ParserRegistry& registry,
                        const ClauseLexicon& lex = ClauseLexicon::builtin(),
                        const ExtractOptions& opts = {});

}  // namespace tsg
