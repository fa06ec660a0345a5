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

#include "tsg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace tsg {

namespace {

using ojson = nlohmann::ordered_json;

bool is_shell(const std::string& c) {
  return c == "powershell" || c == "torus" || c == "merlin";
}

bool is_link(const std::string& c) { return c == "adf" || c == "jarvis"; }

std::string join_lines(const std::vector<std::string>& lines, const std::string& fallback) {
  if (lines.empty()) return fallback;
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

const std::string* single_value(const ParsedComponent& p, const std::string& name) {
  auto it = p.constituents.find(name);
  if (it == p.constituents.end()) return nullptr;
  return std::get_if<std::string>(&it->second);
}

ojson source_lines(const std::string& source) {
  ojson arr = ojson::array();
  std::size_t begin = 0;
  while (true) {
    const std::size_t nl = source.find('\n', begin);
    if (nl == std::string::npos) {
      arr.push_back(source.substr(begin));
      break;
    }
    arr.push_back(source.substr(begin, nl - begin + 1));
    begin = nl + 1;
  }
  return arr;
}

ojson warnings_json(const std::vector<Warning>& ws) {
  ojson arr = ojson::array();
  for (const auto& w : ws) {
    ojson o;
    o["code"] = w.code;
    o["message"] = w.message;
    o["line"] = w.line;
    arr.push_back(std::move(o));
  }
  return arr;
}

}  // namespace

Classification ComponentIdentifier::classify(const Statement& stmt) const {
  return classify_embedding(prototypes,
                            embed(model, encode(stmt, vocab, model.hyper.max_len)));
}

RequiredConstituents default_required_constituents() {
  return {
      {"adf", {"subscription"}},
      {"jarvis", {"url"}},
      {"kusto", {"table"}},
      {"merlin", {"command"}},
      {kNaturalLanguage, {"condition"}},
      {"powershell", {"command"}},
      {"torus", {"command"}},
  };
}

bool is_automatable(const std::string& component, const ParsedComponent& parsed,
                    const RequiredConstituents& required) {
  if (component == kNaturalLanguage) return parsed.has("condition");
  auto it = required.find(component);
  if (it == required.end()) return false;
  return std::all_of(it->second.begin(), it->second.end(),
                     [&](const std::string& name) { return parsed.has(name); });
}

SchematizedTSG schematize(const RawDocument& doc, const PipelineContext& ctx) {
  SchematizedTSG out;
  out.source_name = doc.source_name;
  const RawDocument cleaned = clean_document(doc);
  Segmentation seg = segment(cleaned);
  out.warnings = std::move(seg.warnings);
  for (const auto& stmt : seg.statements) {
    SchemaEntry e;
    e.line_start = stmt.line_start;
    e.line_end = stmt.line_end;
    e.raw = stmt.raw;
    e.lines = stmt.parts;
    const Classification c = ctx.identifier.classify(stmt);
    e.component = c.label;
    e.similarity = c.similarity;
    e.parsed = extract(stmt, c.label, ctx.registry, ctx.lexicon, ctx.extract);
    e.automatable = is_automatable(e.component, e.parsed, ctx.required);
    out.warnings.insert(out.warnings.end(), e.parsed.warnings.begin(), e.parsed.warnings.end());
    out.entries.push_back(std::move(e));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SchemaEntry& a, const SchemaEntry& b) {
                     return a.line_start < b.line_start;
                   });
  return out;
}

std::string reconstruct_source(const SchemaEntry& e) {
  const ParsedComponent& p = e.parsed;
  if (e.component == kNaturalLanguage) {
    const std::string* cond = single_value(p, "condition");
    const std::string* action = single_value(p, "action");
    return "IF " + (cond ? *cond : std::string("<condition>")) + " THEN " +
           (action ? *action : std::string("<action>"));
  }
  if (!is_shell(e.component)) return join_lines(e.lines, e.raw);

  std::string out;
  if (const std::string* var = single_value(p, "variable")) out += *var + " = ";
  if (const std::string* cmd = single_value(p, "command")) out += *cmd;
  // Repeating constituents are interleaved position by position, in name
  // order (param_name before param_value).
  std::vector<const std::vector<std::string>*> lists;
  std::size_t rows = 0;
  for (const auto& [_, v] : p.constituents) {
    if (const auto* l = std::get_if<std::vector<std::string>>(&v)) {
      lists.push_back(l);
      rows = std::max(rows, l->size());
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (const auto* l : lists) {
      if (i < l->size()) out += " " + (*l)[i];
    }
  }
  return out;
}

Workflow emit_workflow(const SchematizedTSG& s) {
  Workflow w;
  for (const auto& e : s.entries) {
    Cell c;
    c.origin_start = e.line_start;
    c.origin_end = e.line_end;
    if (!e.automatable) {
      c.kind = "markdown";
      c.language_tag = "text";
      c.source = join_lines(e.lines, e.raw);
    } else if (e.component == kNaturalLanguage) {
      c.kind = "code";
      c.language_tag = "text";
      c.source = reconstruct_source(e);
      c.needs_review = true;
    } else {
      c.kind = "code";
      c.language_tag = is_link(e.component) ? "link" : e.component;
      c.source = reconstruct_source(e);
    }
    w.cells.push_back(std::move(c));
  }
  return w;
}

std::string schema_to_json(const SchematizedTSG& s) {
  ojson root;
  root["source"] = s.source_name;
  root["entries"] = ojson::array();
  for (const auto& e : s.entries) {
    ojson o;
    o["line_start"] = e.line_start;
    o["line_end"] = e.line_end;
    o["raw"] = e.raw;
    o["component"] = e.component;
    // Rounded so goldens do not depend on the last bits of the arithmetic.
    o["similarity"] = std::round(e.similarity * 1e6) / 1e6;
    o["automatable"] = e.automatable;
    ojson cons = ojson::object();
    for (const auto& [name, v] : e.parsed.constituents) {
      if (const auto* str = std::get_if<std::string>(&v)) {
        cons[name] = *str;
      } else {
        cons[name] = std::get<std::vector<std::string>>(v);
      }
    }
    o["constituents"] = std::move(cons);
    o["missing"] = ojson(std::vector<std::string>(e.parsed.missing.begin(), e.parsed.missing.end()));
    root["entries"].push_back(std::move(o));
  }
  root["warnings"] = warnings_json(s.warnings);
  return root.dump(2) + "\n";
}

std::string workflow_to_json(const Workflow& w) {
  ojson root;
  root["cells"] = ojson::array();
  for (const auto& c : w.cells) {
    ojson o;
    o["cell_type"] = c.kind;
    ojson meta;
    meta["language_tag"] = c.language_tag;
    meta["origin"] = {c.origin_start, c.origin_end};
    if (c.needs_review) meta["needs_review"] = true;
    o["metadata"] = std::move(meta);
    o["source"] = source_lines(c.source);
    root["cells"].push_back(std::move(o));
  }
  return root.dump(2) + "\n";
}

AutomationSummary summarize(const SchematizedTSG& s) {
  AutomationSummary sum;
  for (const auto& e : s.entries) {
    ++sum.per_component[e.component];
    ++sum.entries;
    if (e.automatable) ++sum.automatable;
  }
  return sum;
}

}  // namespace tsg
