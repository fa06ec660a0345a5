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

#include <json.hpp>
#include <random>

#include "model_oracle.hpp"
#include "provenance.hpp"
#include "tsg/evalharness.hpp"
#include "tsg/pipeline.hpp"

using namespace tsg;

namespace {

const ParserRegistry& bundled() {
  static const ParserRegistry reg = load_registry(TSG_SOURCE_DIR "/data/registry.tsv");
  return reg;
}

// Untrained network whose prototypes are the embeddings of the given
// exemplars, so each exemplar classifies as its own class.
ComponentIdentifier exemplar_identifier(const std::map<std::string, std::string>& exemplars) {
  ComponentIdentifier id;
  std::vector<Statement> stmts;
  for (const auto& [_, text] : exemplars) stmts.push_back(make_statement(text));
  const auto corpus = load_corpus(TSG_SOURCE_DIR "/data/corpus.jsonl");
  for (const auto& e : corpus.examples) stmts.push_back(e.stmt);
  id.vocab = build_vocabulary(stmts);
  id.model = oracle::random_model(id.vocab.size(), {8, 8, 3, 16}, kDefaultMaxLen, 3, 0.5);
  SupportSet support;
  for (const auto& [label, text] : exemplars) {
    support[label].push_back(encode(make_statement(text), id.vocab));
  }
  id.prototypes = compute_prototypes(id.model, support);
  return id;
}

std::map<std::string, std::string> table2() {
  std::map<std::string, std::string> out;
  for (const auto& e : load_corpus(TSG_SOURCE_DIR "/tests/data/table2.jsonl").examples) {
    out[e.label] = e.stmt.raw;
  }
  return out;
}

RawDocument doc(const std::string& text) { return RawDocument{text, "doc.md", {}}; }

SchematizedTSG run(const ComponentIdentifier& id, const RawDocument& d) {
  const auto lex = ClauseLexicon::builtin();
  PipelineContext ctx{id, bundled(), lex, default_required_constituents(), ExtractOptions{}};
  return schematize(d, ctx);
}

}  // namespace

TEST_CASE("the seven exemplars become seven labelled entries") {
  const auto ex = table2();
  const auto id = exemplar_identifier(ex);
  std::string text;
  for (const auto& [_, line] : ex) text += line + "\n\n";
  const auto s = run(id, doc(text));
  REQUIRE(s.entries.size() == 7);
  for (const auto& e : s.entries) {
    INFO(e.raw);
    CHECK(ex.at(e.component) == e.raw);
    CHECK(e.similarity == 1.0);
  }
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    CHECK(s.entries[i - 1].line_start < s.entries[i].line_start);
  }
}

TEST_CASE("empty and prose-only documents") {
  const auto id = exemplar_identifier(
      {{"kusto", "StormEvents | where State == \"FLORIDA\" | count"},
       {"natural_language", "Open the dashboard and review the error trend."}});
  CHECK(run(id, doc("")).entries.empty());
  const auto s = run(id, doc("Open the dashboard and review the error trend."));
  REQUIRE(s.entries.size() == 1);
  CHECK(s.entries[0].component == "natural_language");
  CHECK_FALSE(s.entries[0].automatable);
  const auto w = emit_workflow(s);
  REQUIRE(w.cells.size() == 1);
  CHECK(w.cells[0].kind == "markdown");
}

TEST_CASE("a torus entry becomes its command line") {
  SchemaEntry e;
  e.component = "torus";
  e.line_start = e.line_end = 4;
  e.raw = "$rules = Get-TransportRule -Organization $org";
  e.lines = {e.raw};
  e.parsed.component = "torus";
  e.parsed.constituents["variable"] = std::string("$rules");
  e.parsed.constituents["command"] = std::string("Get-TransportRule");
  e.parsed.constituents["param_name"] = std::vector<std::string>{"-Organization"};
  e.parsed.constituents["param_value"] = std::vector<std::string>{"$org"};
  e.automatable = true;
  const auto w = emit_workflow(SchematizedTSG{"t.md", {e}, {}});
  REQUIRE(w.cells.size() == 1);
  CHECK(w.cells[0].kind == "code");
  CHECK(w.cells[0].language_tag == "torus");
  CHECK(w.cells[0].source == "$rules = Get-TransportRule -Organization $org");
  CHECK(w.cells[0].origin_start == 4);
}

TEST_CASE("a conditional entry becomes a review stub") {
  SchemaEntry e;
  e.component = kNaturalLanguage;
  e.line_start = e.line_end = 2;
  e.raw = "If the status is green, the problem is self-resolved.";
  e.lines = {e.raw};
  e.parsed.constituents["condition"] = std::string("the status is green");
  e.parsed.constituents["action"] = std::string("the problem is self-resolved");
  e.automatable = is_automatable(e.component, e.parsed, default_required_constituents());
  CHECK(e.automatable);
  const auto w = emit_workflow(SchematizedTSG{"t.md", {e}, {}});
  REQUIRE(w.cells.size() == 1);
  CHECK(w.cells[0].kind == "code");
  CHECK(w.cells[0].needs_review);
  CHECK(w.cells[0].source == "IF the status is green THEN the problem is self-resolved");
  const auto j = nlohmann::json::parse(workflow_to_json(w));
  CHECK(j["cells"][0]["metadata"]["needs_review"] == true);
  CHECK(j["cells"][0]["metadata"]["origin"] == nlohmann::json::array({2, 2}));
}

TEST_CASE("automatable needs the configured constituents") {
  ParsedComponent p;
  p.constituents["table"] = std::string("T");
  CHECK(is_automatable("kusto", p, default_required_constituents()));
  CHECK_FALSE(is_automatable("adf", p, default_required_constituents()));
  CHECK_FALSE(is_automatable("kusto", p, {}));
  RequiredConstituents strict{{"kusto", {"table", "cluster"}}};
  CHECK_FALSE(is_automatable("kusto", p, strict));
}

TEST_CASE("fixture document: provenance, determinism and prose cells") {
  const auto id = exemplar_identifier(table2());
  const auto d = load_document(TSG_SOURCE_DIR "/data/fixtures/mailflow_tsg.md");
  const auto s = run(id, d);
  const auto w = emit_workflow(s);
  CHECK(schema_to_json(run(id, d)) == schema_to_json(s));
  CHECK(workflow_to_json(emit_workflow(run(id, d))) == workflow_to_json(w));
  CHECK(oracle::provenance_violations(d, w).empty());
  REQUIRE(w.cells.size() == s.entries.size());
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    if (e.component == kNaturalLanguage && !e.parsed.has("condition")) {
      CHECK(w.cells[i].kind == "markdown");
    }
    CHECK((w.cells[i].kind == "code") == e.automatable);
  }
  const auto sum = summarize(s);
  CHECK(sum.entries == s.entries.size());
  std::size_t total = 0;
  for (const auto& [_, n] : sum.per_component) total += n;
  CHECK(total == sum.entries);
}

TEST_CASE("provenance holds on random documents") {
  const auto id = exemplar_identifier(table2());
  const std::vector<std::string> pieces{
      "", "  ", "# Heading", "Get-Mailbox -Identity x", "| where x > 1", "| a | b |",
      "![i](p.png)", "foreach ($m in $all) {", "  Do-Thing $m", "}", "If it fails, restart it",
      "<details>", "https://jarvis.msft.net/dashboard/share/AB", "T | take 5"};
  std::mt19937 gen(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int n = static_cast<int>(gen() % 12);
    for (int i = 0; i < n; ++i) text += pieces[gen() % pieces.size()] + "\n";
    const auto d = doc(text);
    const auto w = emit_workflow(run(id, d));
    INFO(text);
    CHECK(oracle::provenance_violations(d, w).empty());
  }
}

TEST_CASE("schema json shape") {
  const auto id = exemplar_identifier(table2());
  const auto s = run(id, doc("StormEvents | where State == \"FLORIDA\" | count\n"));
  const auto j = nlohmann::json::parse(schema_to_json(s));
  CHECK(j["source"] == "doc.md");
  REQUIRE(j["entries"].size() == 1);
  const auto& e = j["entries"][0];
  CHECK(e["component"] == "kusto");
  CHECK(e["constituents"]["table"] == "StormEvents");
  CHECK(e["automatable"] == true);
  CHECK(j["warnings"].is_array());
}
