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

// Document to schematized TSG to workflow.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tsg/clause_tagger.hpp"
#include "tsg/constituent_extractor.hpp"
#include "tsg/identifier.hpp"
#include "tsg/ingest.hpp"
#include "tsg/metric_model.hpp"
#include "tsg/vectorize.hpp"

namespace tsg {

/// Everything needed to label a statement.
struct ComponentIdentifier {
  Vocabulary vocab;
  SiameseModel model;
  std::vector<Prototype> prototypes;

  Classification classify(const Statement& stmt) const;
};

/// Constituents that must be present for an entry to be automatable.
using RequiredConstituents = std::map<std::string, std::vector<std::string>>;

RequiredConstituents default_required_constituents();

struct SchemaEntry {
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  std::string raw;
  std::vector<std::string> lines;  // source lines of the statement
  std::string component;
  double similarity = 0.0;
  ParsedComponent parsed;
  bool automatable = false;
};

struct SchematizedTSG {
  std::string source_name;
  std::vector<SchemaEntry> entries;
  std::vector<Warning> warnings;
};

struct PipelineContext {
  const ComponentIdentifier& identifier;
  const ParserRegistry& registry;
  const ClauseLexicon& lexicon;
  RequiredConstituents required = default_required_constituents();
  ExtractOptions extract;
};

bool is_automatable(const std::string& component, const ParsedComponent& parsed,
                    const RequiredConstituents& required);

SchematizedTSG schematize(const RawDocument& doc, const PipelineContext& ctx);

struct Cell {
  std::string kind;          // "code" or "markdown"
  std::string language_tag;  // kusto, powershell, torus, merlin, link, text
  std::string source;
  std::size_t origin_start = 0;
  std::size_t origin_end = 0;
  bool needs_review = false;
};

struct Workflow {
  std::vector<Cell> cells;
};

Workflow emit_workflow(const SchematizedTSG& s);

/// Code-cell text rebuilt from parsed constituents.
std::string reconstruct_source(const SchemaEntry& e);

std::string schema_to_json(const SchematizedTSG& s);
std::string workflow_to_json(const Workflow& w);

struct AutomationSummary {
  std::map<std::string, std::size_t> per_component;
  std::size_t entries = 0;
  std::size_t automatable = 0;

  double automatable_fraction() const {
    return entries == 0 ? 0.0 : static_cast<double>(automatable) / static_cast<double>(entries);
  }
};

AutomationSummary summarize(const SchematizedTSG& s);

}  // namespace tsg
