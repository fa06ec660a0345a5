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

#include "tsg/synthesizer.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>

#include "tsg/io.hpp"

namespace tsg {

namespace {

using Subset = std::vector<std::size_t>;

// Inputs indexed once per synthesis call.
struct Workspace {
  std::vector<StringIndex> inputs;
  std::vector<std::string> outputs;

  explicit Workspace(const ExampleSpec& spec) {
    inputs.reserve(spec.pairs.size());
    for (const auto& p : spec.pairs) {
      inputs.emplace_back(p.input);
      outputs.push_back(p.output);
    }
  }
};

std::vector<std::optional<TokenClass>> side_alphabet() {
  std::vector<std::optional<TokenClass>> out{std::nullopt};
  for (TokenClass tc : all_token_classes()) out.emplace_back(tc);
  return out;
}

bool has_alnum(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  });
}

void keep_best(std::optional<PositionExpr>& slot, const PositionExpr& p) {
  if (!slot || compare_positions(p, *slot) < 0) slot = p;
}

// Best RegPos-based and best AbsPos-based expression for one resolution
// vector. An atom's rank depends on the kinds of both ends first, so both
// are kept.
struct BestByKind {
  std::optional<PositionExpr> reg;
  std::optional<PositionExpr> abs;

  void add(const PositionExpr& p) {
    keep_best(std::holds_alternative<AbsPos>(p) ? abs : reg, p);
  }
  std::vector<PositionExpr> all() const {
    std::vector<PositionExpr> out;
    if (reg) out.push_back(*reg);
    if (abs) out.push_back(*abs);
    return out;
  }
};

std::vector<std::size_t> occurrences(std::string_view text, std::string_view needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > text.size()) return out;
  for (std::size_t i = text.find(needle); i != std::string_view::npos;
       i = text.find(needle, i + 1)) {
    out.push_back(i);
  }
  return out;
}

// Top-ranked SubStr (or ConstStr when allowed) that extracts outs[k] from
// ins[k] for every k.
std::optional<Atom> best_single_atom(const std::vector<const StringIndex*>& ins,
                                     const std::vector<std::string_view>& outs,
                                     const SynthesisBounds& bounds, bool allow_const) {
  std::optional<Atom> best;
  auto offer = [&](Atom a) {
    if (!best || compare_atoms(a, *best) < 0) best = std::move(a);
  };

  const StringIndex& first = *ins[0];
  const auto spans = occurrences(first.text(), outs[0]);
  if (!spans.empty()) {
    std::map<std::string, PositionExpr> starts;
    std::map<std::string, PositionExpr> ends;
    for (std::size_t i : spans) {
      for (auto& p : positions_resolving_to(first, i, bounds)) starts.emplace(serialize(p), p);
      for (auto& p : positions_resolving_to(first, i + outs[0].size(), bounds)) {
        ends.emplace(serialize(p), p);
      }
    }
    // Both maps are keyed by the start index each expression implies on
    // every example.
    std::map<std::vector<std::size_t>, BestByKind> by_start;
    std::map<std::vector<std::size_t>, BestByKind> by_end;
    std::vector<std::size_t> key(ins.size());
    for (const auto& [_, p] : starts) {
      bool ok = true;
      for (std::size_t k = 0; k < ins.size() && ok; ++k) {
        auto r = resolve_position(p, *ins[k]);
        ok = r.ok() && ins[k]->text().substr(r.value(), outs[k].size()) == outs[k];
        if (ok) key[k] = r.value();
      }
      if (ok) by_start[key].add(p);
    }
    for (const auto& [_, p] : ends) {
      bool ok = true;
      for (std::size_t k = 0; k < ins.size() && ok; ++k) {
        auto r = resolve_position(p, *ins[k]);
        ok = r.ok() && r.value() >= outs[k].size() &&
             ins[k]->text().substr(r.value() - outs[k].size(), outs[k].size()) == outs[k];
        if (ok) key[k] = r.value() - outs[k].size();
      }
      if (ok) by_end[key].add(p);
    }
    for (const auto& [k, s] : by_start) {
      auto it = by_end.find(k);
      if (it == by_end.end()) continue;
      for (const auto& sp : s.all()) {
        for (const auto& ep : it->second.all()) offer(SubStr{sp, ep});
      }
    }
  }
  if (allow_const && !outs[0].empty() &&
      std::all_of(outs.begin(), outs.end(), [&](std::string_view o) { return o == outs[0]; })) {
    offer(ConstStr{std::string(outs[0])});
  }
  return best;
}

struct Piece {
  std::string text;
  bool constant = false;
};

// Greedy split of `output` into maximal substrings of `input`; pieces with
// no alphanumeric character, and characters absent from the input, become
// constants.
std::vector<Piece> decompose(std::string_view input, std::string_view output) {
  std::vector<Piece> pieces;
  auto push_const = [&](std::string_view s) {
    if (!pieces.empty() && pieces.back().constant) {
      pieces.back().text += s;
    } else {
      pieces.push_back({std::string(s), true});
    }
  };
  std::size_t p = 0;
  while (p < output.size()) {
    std::size_t len = 0;
    while (p + len < output.size() &&
           input.find(output.substr(p, len + 1)) != std::string_view::npos) {
      ++len;
    }
    if (len == 0) {
      push_const(output.substr(p, 1));
      p += 1;
      continue;
    }
    const auto piece = output.substr(p, len);
    if (has_alnum(piece)) {
      pieces.push_back({std::string(piece), false});
    } else {
      push_const(piece);
    }
    p += len;
  }
  return pieces;
}

std::optional<Branch> multi_atom_branch(const std::vector<const StringIndex*>& ins,
                                        const std::vector<std::string_view>& outs,
                                        const SynthesisBounds& bounds) {
  std::vector<std::vector<Piece>> all;
  for (std::size_t k = 0; k < ins.size(); ++k) all.push_back(decompose(ins[k]->text(), outs[k]));
  const auto& ref = all[0];
  if (ref.size() < 2 || ref.size() > bounds.max_atoms) return std::nullopt;
  for (const auto& pieces : all) {
    if (pieces.size() != ref.size()) return std::nullopt;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (pieces[j].constant != ref[j].constant) return std::nullopt;
      if (ref[j].constant && pieces[j].text != ref[j].text) return std::nullopt;
    }
  }
  Branch b;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (ref[j].constant) {
      b.atoms.push_back(ConstStr{ref[j].text});
      continue;
    }
    std::vector<std::string_view> piece_outs;
    for (const auto& pieces : all) piece_outs.push_back(pieces[j].text);
    auto atom = best_single_atom(ins, piece_outs, bounds, false);
    if (!atom) return std::nullopt;
    b.atoms.push_back(std::move(*atom));
  }
  // Piece atoms are chosen independently, so recheck the concatenation.
  for (std::size_t k = 0; k < ins.size(); ++k) {
    auto r = eval_branch(b, *ins[k]);
    if (!r.ok() || r.value() != outs[k]) return std::nullopt;
  }
  return b;
}

std::optional<Branch> branch_on(const Workspace& ws, const Subset& subset,
                                const SynthesisBounds& bounds, bool allow_const) {
  std::vector<const StringIndex*> ins;
  std::vector<std::string_view> outs;
  for (std::size_t k : subset) {
    ins.push_back(&ws.inputs[k]);
    outs.push_back(ws.outputs[k]);
  }
  if (auto atom = best_single_atom(ins, outs, bounds, allow_const)) {
    return Branch{{std::move(*atom)}};
  }
  return multi_atom_branch(ins, outs, bounds);
}

std::vector<Predicate> candidate_predicates(const Workspace& ws, const Subset& remaining,
                                            const SynthesisBounds& bounds) {
  std::vector<Predicate> preds;
  std::vector<std::string> literals;
  for (std::size_t k : remaining) {
    const auto text = ws.inputs[k].text();
    std::size_t n = 0;
    while (n < text.size() && ((text[n] >= 'A' && text[n] <= 'Z') ||
                               (text[n] >= 'a' && text[n] <= 'z'))) {
      ++n;
    }
    if (n > 0) literals.emplace_back(text.substr(0, n));
  }
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (auto& l : literals) preds.push_back(StartsWithText{std::move(l)});
  for (TokenClass tc : all_token_classes()) {
    if (tc == TokenClass::StartAnchor || tc == TokenClass::EndAnchor) continue;
    preds.push_back(StartsWith{tc});
    preds.push_back(EndsWith{tc});
    for (int occ = 1; occ <= bounds.max_occurrence; ++occ) preds.push_back(Contains{tc, occ});
  }
  std::sort(preds.begin(), preds.end(),
            [](const Predicate& a, const Predicate& b) { return compare_predicates(a, b) < 0; });
  return preds;
}

// Examples of `remaining` that no branch can cover even on their own.
Subset uncoverable(const Workspace& ws, const Subset& remaining, const SynthesisBounds& bounds) {
  Subset out;
  for (std::size_t k : remaining) {
    if (!branch_on(ws, {k}, bounds, false)) out.push_back(k);
  }
  return out.empty() ? remaining : out;
}

std::string describe(const Subset& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace

std::vector<PositionExpr> positions_resolving_to(const StringIndex& s, std::size_t i,
                                                 const SynthesisBounds& bounds) {
  std::vector<PositionExpr> out;
  const auto sides = side_alphabet();
  for (const auto& left : sides) {
    for (const auto& right : sides) {
      if (!left && !right) continue;
      const auto& b = s.boundaries(left, right);
      const auto it = std::lower_bound(b.begin(), b.end(), i);
      if (it == b.end() || *it != i) continue;
      const int from_left = static_cast<int>(it - b.begin()) + 1;
      const int from_right = static_cast<int>(b.end() - it);
      if (from_left <= bounds.max_occurrence) out.push_back(RegPos{left, right, from_left});
      if (from_right <= bounds.max_occurrence) out.push_back(RegPos{left, right, -from_right});
    }
  }
  const int len = static_cast<int>(s.size());
  const int ii = static_cast<int>(i);
  if (ii <= bounds.abs_window) out.push_back(AbsPos{ii});
  if (len - ii <= bounds.abs_window) out.push_back(AbsPos{-(len - ii) - 1});
  std::sort(out.begin(), out.end(), [](const PositionExpr& a, const PositionExpr& b) {
    return compare_positions(a, b) < 0;
  });
  return out;
}

std::vector<Atom> generate_atoms(const std::string& input, const std::string& output,
                                 const SynthesisBounds& bounds) {
  const auto spans = occurrences(input, output);
  if (spans.empty()) {
    throw Error(ErrorKind::NoOccurrence, "output does not occur in input");
  }
  const StringIndex idx(input);
  std::map<std::string, Atom> atoms;
  for (std::size_t i : spans) {
    const auto starts = positions_resolving_to(idx, i, bounds);
    const auto ends = positions_resolving_to(idx, i + output.size(), bounds);
    for (const auto& sp : starts) {
      for (const auto& ep : ends) {
        Atom a = SubStr{sp, ep};
        atoms.emplace(serialize(a), std::move(a));
      }
    }
  }
  Atom c = ConstStr{output};
  atoms.emplace(serialize(c), std::move(c));
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (auto& [_, a] : atoms) out.push_back(std::move(a));
  std::sort(out.begin(), out.end(),
            [](const Atom& a, const Atom& b) { return compare_atoms(a, b) < 0; });
  return out;
}

std::optional<Branch> synthesize_branch(const ExampleSpec& spec, const SynthesisBounds& bounds) {
  if (spec.pairs.empty()) return std::nullopt;
  const Workspace ws(spec);
  Subset all(spec.pairs.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return branch_on(ws, all, bounds, true);
}

ExtractionProgram synthesize(const ExampleSpec& spec, const SynthesisBounds& bounds) {
  if (spec.pairs.empty()) {
    throw SynthesisError("spec '" + spec.constituent + "' has no examples", {});
  }
  const Workspace ws(spec);
  Subset remaining(spec.pairs.size());
  for (std::size_t k = 0; k < remaining.size(); ++k) remaining[k] = k;

  ExtractionProgram prog;
  if (auto b = branch_on(ws, remaining, bounds, true)) {
    prog.node = Single{std::move(*b)};
  } else {
    Switch sw;
    while (true) {
      if (sw.cases.size() + 1 > bounds.max_branches) {
        throw SynthesisError("branch limit reached for '" + spec.constituent + "'", remaining);
      }
      if (auto b = branch_on(ws, remaining, bounds, false)) {
        sw.fallback = std::move(*b);
        break;
      }
      const auto preds = candidate_predicates(ws, remaining, bounds);
      // Distinct truth sets, each with its best-ranked predicate.
      std::vector<std::pair<Subset, const Predicate*>> splits;
      std::map<Subset, std::size_t> seen;
      for (const auto& p : preds) {
        Subset t;
        for (std::size_t k : remaining) {
          if (holds(p, ws.inputs[k])) t.push_back(k);
        }
        if (t.empty() || t.size() == remaining.size() || seen.count(t)) continue;
        seen.emplace(t, splits.size());
        splits.emplace_back(std::move(t), &p);
      }
      // Largest subset first; among equal sizes the better predicate, then
      // the subset holding the earliest example.
      std::stable_sort(splits.begin(), splits.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        if (int c = compare_predicates(*a.second, *b.second)) return c < 0;
        return a.first < b.first;
      });
      bool found = false;
      for (const auto& [t, pred] : splits) {
        auto b = branch_on(ws, t, bounds, false);
        if (!b) continue;
        sw.cases.push_back({*pred, std::move(*b)});
        Subset rest;
        std::set_difference(remaining.begin(), remaining.end(), t.begin(), t.end(),
                            std::back_inserter(rest));
        remaining = std::move(rest);
        found = true;
        break;
      }
      if (!found) {
        const Subset unmet = uncoverable(ws, remaining, bounds);
        throw SynthesisError("no program covers examples " + describe(unmet) + " of '" +
                                 spec.constituent + "'",
                             unmet);
      }
    }
    prog.node = std::move(sw);
  }

  Subset wrong;
  for (std::size_t k = 0; k < spec.pairs.size(); ++k) {
    auto r = eval_program(prog, ws.inputs[k]);
    if (!r.ok() || r.value() != ws.outputs[k]) wrong.push_back(k);
  }
  if (!wrong.empty()) {
    throw SynthesisError("synthesized program is inconsistent on " + describe(wrong), wrong);
  }
  return prog;
}

// --- spec files ---

ExampleSpec parse_example_spec(const std::string& text) {
  ExampleSpec spec;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "spec line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Format, where + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Format, where + ": expected an object");
    try {
      if (!have_header) {
        spec.component = j.at("component").get<std::string>();
        spec.constituent = j.at("constituent").get<std::string>();
        spec.repeats = j.value("repeats", false);
        if (j.contains("preprocess")) {
          spec.preprocess = j.at("preprocess").get<std::vector<std::string>>();
        }
        for (const auto& f : spec.preprocess) {
          if (f != "split_pipes" && f != "tag_clauses") {
            throw Error(ErrorKind::Format, where + ": unknown preprocess flag " + f);
          }
        }
        if (spec.component.empty() || spec.constituent.empty()) {
          throw Error(ErrorKind::Format, where + ": empty component or constituent");
        }
        have_header = true;
        continue;
      }
      ExamplePair p{j.at("input").get<std::string>(), j.at("output").get<std::string>()};
      if (p.output.empty()) throw Error(ErrorKind::Format, where + ": empty output");
      spec.pairs.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Format, where + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorKind::Format, "spec has no header record");
  if (spec.pairs.empty()) throw Error(ErrorKind::Format, "spec has no examples");
  return spec;
}

ExampleSpec load_example_spec(const std::string& path) { return parse_example_spec(read_file(path)); }

std::string serialize_example_spec(const ExampleSpec& spec) {
  nlohmann::ordered_json header;
  header["component"] = spec.component;
  header["constituent"] = spec.constituent;
  header["repeats"] = spec.repeats;
  if (!spec.preprocess.empty()) header["preprocess"] = spec.preprocess;
  std::string out = header.dump() + "\n";
  for (const auto& p : spec.pairs) {
    nlohmann::ordered_json rec;
    rec["input"] = p.input;
    rec["output"] = p.output;
    out += rec.dump() + "\n";
  }
  return out;
}

}  // namespace tsg
