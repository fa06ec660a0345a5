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

#include "tsg/constituent_extractor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "tsg/identifier.hpp"
#include "tsg/io.hpp"

namespace tsg {

namespace {

constexpr std::string_view kRegistryHeader = "tsg-registry 1";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string::npos) {
      out.push_back(line.substr(begin));
      return out;
    }
    out.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

std::string flags_text(const ParserEntry& e) {
  std::string out;
  if (e.split_pipes) out += "split_pipes";
  if (e.tag_clauses) out += out.empty() ? "tag_clauses" : ",tag_clauses";
  return out.empty() ? "-" : out;
}

}  // namespace

void ParserRegistry::put(ParserEntry entry) {
  if (!is_valid_component_name(entry.component) || entry.constituent.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "bad registry key '" + entry.component + "/" + entry.constituent + "'");
  }
  auto key = std::make_pair(entry.component, entry.constituent);
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

bool ParserRegistry::has_component(const std::string& component) const {
  auto it = entries_.lower_bound({component, std::string()});
  return it != entries_.end() && it->first.first == component;
}

std::vector<const ParserEntry*> ParserRegistry::entries_for(const std::string& component) const {
  std::vector<const ParserEntry*> out;
  for (auto it = entries_.lower_bound({component, std::string()});
       it != entries_.end() && it->first.first == component; ++it) {
    out.push_back(&it->second);
  }
  return out;
}

std::string ParserRegistry::serialize() const {
  std::string out(kRegistryHeader);
  out += '\n';
  for (const auto& [_, e] : entries_) {
    out += e.component + '\t' + e.constituent + '\t' + (e.repeats ? "1" : "0") + '\t' +
           flags_text(e) + '\t' + tsg::serialize(e.program) + '\n';
  }
  return out;
}

ParserRegistry ParserRegistry::parse(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kRegistryHeader) {
    throw Error(ErrorKind::Format, "registry must start with '" + std::string(kRegistryHeader) + "'");
  }
  ParserRegistry reg;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const std::string where = "registry line " + std::to_string(i + 1);
    const auto f = split_tabs(lines[i]);
    if (f.size() != 5) throw Error(ErrorKind::Format, where + ": expected 5 fields");
    ParserEntry e;
    e.component = f[0];
    e.constituent = f[1];
    if (f[2] != "0" && f[2] != "1") throw Error(ErrorKind::Format, where + ": repeats must be 0/1");
    e.repeats = f[2] == "1";
    if (f[3] != "-") {
      std::size_t begin = 0;
      while (begin <= f[3].size()) {
        std::size_t comma = f[3].find(',', begin);
        if (comma == std::string::npos) comma = f[3].size();
        const std::string flag = f[3].substr(begin, comma - begin);
        if (flag == "split_pipes") {
          e.split_pipes = true;
        } else if (flag == "tag_clauses") {
          e.tag_clauses = true;
        } else {
          throw Error(ErrorKind::Format, where + ": unknown flag '" + flag + "'");
        }
        begin = comma + 1;
      }
    }
    try {
      e.program = parse_program(f[4]);
    } catch (const Error& err) {
      throw Error(ErrorKind::Format, where + ": " + err.what());
    }
    const auto key = std::make_pair(e.component, e.constituent);
    if (reg.entries_.count(key)) throw Error(ErrorKind::Format, where + ": duplicate entry");
    reg.put(std::move(e));
  }
  return reg;
}

ParserRegistry load_registry(const std::string& path) {
  return ParserRegistry::parse(read_file(path));
}

void save_registry(const ParserRegistry& registry, const std::string& path) {
  write_file(path, registry.serialize());
}

ParserEntry learn_parser(const ExampleSpec& spec, const SynthesisBounds& bounds,
                         const ClauseLexicon& lex) {
  ParserEntry e;
  e.component = spec.component;
  e.constituent = spec.constituent;
  e.repeats = spec.repeats;
  for (const auto& f : spec.preprocess) {
    if (f == "split_pipes") e.split_pipes = true;
    if (f == "tag_clauses") e.tag_clauses = true;
  }
  if (!e.tag_clauses) {
    e.program = synthesize(spec, bounds);
    return e;
  }
  ExampleSpec tagged = spec;
  for (auto& p : tagged.pairs) p.input = tag_clauses(p.input, lex).text;
  e.program = synthesize(tagged, bounds);
  return e;
}

RepeatResult extract_repeating(std::string_view text, std::span<const ExtractionProgram> parsers,
                               std::size_t max_iterations) {
  if (parsers.empty()) throw Error(ErrorKind::InvalidArgument, "no repeating parsers");
  RepeatResult res;
  std::string work(text);
  while (true) {
    std::vector<std::string> tuple;
    for (const auto& prog : parsers) {
      auto r = eval_program(prog, work);
      if (!r.ok() || r.value().empty()) return res;
      tuple.push_back(r.value());
    }
    if (res.tuples.size() == max_iterations) {
      res.limit_reached = true;
      return res;
    }
    // Delete left to right by first occurrence, the longer value first when
    // two start at the same place.
    std::vector<std::size_t> order(tuple.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> pos(tuple.size());
    for (std::size_t k = 0; k < tuple.size(); ++k) pos[k] = work.find(tuple[k]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pos[a] != pos[b]) return pos[a] < pos[b];
      return tuple[a].size() > tuple[b].size();
    });
    for (std::size_t k : order) {
      const std::size_t p = work.find(tuple[k]);
      if (p != std::string::npos) work.erase(p, tuple[k].size());
    }
    res.tuples.push_back(std::move(tuple));
  }
}

std::vector<std::string> split_pipes(std::string_view text) {
  std::vector<std::string> out;
  char quote = 0;
  std::size_t begin = 0;
  auto emit = [&](std::size_t end) {
    const auto seg = trim(text.substr(begin, end - begin));
    if (!seg.empty()) out.emplace_back(seg);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '|') {
      emit(i);
      begin = i + 1;
    }
  }
  emit(text.size());
  return out;
}

ParsedComponent extract(const Statement& stmt, const std::string& component,
                        const ParserRegistry& registry, const ClauseLexicon& lex,
                        const ExtractOptions& opts) {
  ParsedComponent pc;
  pc.component = component;
  const auto entries = registry.entries_for(component);
  std::optional<TaggedSentence> tagged;

  // Working inputs for one entry's flags; empty when the entry does not apply.
  auto inputs_for = [&](const ParserEntry& e) -> std::vector<std::string> {
    std::string base = stmt.raw;
    if (e.tag_clauses) {
      if (!tagged) tagged = tag_clauses(stmt.raw, lex);
      if (!tagged->has_subordinate) return {};
      base = tagged->text;
    }
    if (e.split_pipes) return split_pipes(base);
    return {base};
  };

  std::map<std::pair<bool, bool>, std::vector<const ParserEntry*>> groups;
  for (const ParserEntry* e : entries) {
    if (e->repeats) {
      groups[{e->split_pipes, e->tag_clauses}].push_back(e);
      continue;
    }
    bool found = false;
    for (const auto& seg : inputs_for(*e)) {
      auto r = eval_program(e->program, seg);
      if (r.ok() && !r.value().empty()) {
        pc.constituents[e->constituent] = r.value();
        found = true;
        break;
      }
    }
    if (!found) pc.missing.insert(e->constituent);
  }

  for (const auto& [_, group] : groups) {
    std::vector<ExtractionProgram> progs;
    for (const ParserEntry* e : group) progs.push_back(e->program);
    std::vector<std::vector<std::string>> lists(group.size());
    for (const auto& seg : inputs_for(*group.front())) {
      auto r = extract_repeating(seg, progs, opts.max_iterations);
      if (r.limit_reached) {
        pc.warnings.push_back({"IterationLimitExceeded",
                               component + " repeating extraction stopped after " +
                                   std::to_string(opts.max_iterations) + " iterations",
                               stmt.line_start});
      }
      for (const auto& t : r.tuples) {
        for (std::size_t k = 0; k < t.size(); ++k) lists[k].push_back(t[k]);
      }
    }
    for (std::size_t k = 0; k < group.size(); ++k) {
      pc.constituents[group[k]->constituent] = std::move(lists[k]);
    }
  }
  return pc;
}

}  // namespace tsg
