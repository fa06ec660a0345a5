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

#include "synth_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <regex>
#include <set>
#include <tuple>

#include "tsg/clause_tagger.hpp"

namespace oracle {

namespace {

const std::regex& class_regex(TokenClass tc) {
  static const std::vector<std::regex> table = [] {
    const char* patterns[] = {
        "[A-Za-z0-9]+",       // Alphanumeric
        "[A-Za-z]+",          // Alpha
        "[0-9]+",             // Digits
        "\\s+",               // Whitespace
        "\\$",                // Dollar
        "-",                  // Dash
        "\\.",                // Dot
        "/",                  // Slash
        "\\|",                // Pipe
        "[\"']",              // Quote
        "\\{",                // OpenBrace
        "\\}",                // CloseBrace
        ",",                  // Comma
        "=",                  // Equals
        "\\$[A-Za-z0-9]+",    // DollarWord
        "-[A-Za-z0-9]+",      // DashWord
        "[A-Za-z0-9_.@\\-]+",  // DottedName
        "",                   // StartAnchor (special-cased)
        "",                   // EndAnchor (special-cased)
        "<[A-Za-z0-9]+>",     // TagOpen
        "</[A-Za-z0-9]+>",    // TagClose
    };
    std::vector<std::regex> out;
    for (const char* p : patterns) out.emplace_back(p);
    return out;
  }();
  return table.at(static_cast<std::size_t>(tc));
}

std::vector<std::size_t> boundaries(const std::optional<TokenClass>& left,
                                    const std::optional<TokenClass>& right,
                                    const std::string& s) {
  std::set<std::size_t> ends, starts;
  if (left) {
    for (auto [b, e] : matches(*left, s)) ends.insert(e);
  } else {
    for (std::size_t i = 0; i <= s.size(); ++i) ends.insert(i);
  }
  if (right) {
    for (auto [b, e] : matches(*right, s)) starts.insert(b);
  } else {
    for (std::size_t i = 0; i <= s.size(); ++i) starts.insert(i);
  }
  std::vector<std::size_t> out;
  std::set_intersection(ends.begin(), ends.end(), starts.begin(), starts.end(),
                        std::back_inserter(out));
  return out;
}

std::optional<std::string> eval_branch(const Branch& b, const std::string& s) {
  std::string out;
  for (const auto& a : b.atoms) {
    if (const auto* c = std::get_if<tsg::ConstStr>(&a)) {
      out += c->s;
      continue;
    }
    const auto& sub = std::get<tsg::SubStr>(a);
    const auto i = resolve(sub.start, s);
    const auto j = resolve(sub.end, s);
    if (!i || !j || *i > *j) return std::nullopt;
    out += s.substr(*i, *j - *i);
  }
  return out;
}

// Resolution of every bounded position on `s`, memoized across calls since
// the switch search revisits the same inputs many times.
const std::vector<std::optional<std::size_t>>& resolutions(const std::string& s,
                                                           const tsg::SynthesisBounds& bounds) {
  static std::map<std::tuple<std::string, int, int>, std::vector<std::optional<std::size_t>>>
      cache;
  auto key = std::make_tuple(s, bounds.max_occurrence, bounds.abs_window);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::optional<std::size_t>> out;
  for (const auto& p : all_positions(bounds)) out.push_back(resolve(p, s));
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

bool less_atom(const Atom& a, const Atom& b) { return tsg::compare_atoms(a, b) < 0; }

// Exhaustive single-atom search over every (start, end) pair.
std::optional<Atom> best_atom(const std::vector<std::string>& ins,
                              const std::vector<std::string>& outs,
                              const tsg::SynthesisBounds& bounds, bool allow_const) {
  // Empty outputs are never valid examples.
  if (std::any_of(outs.begin(), outs.end(), [](const std::string& o) { return o.empty(); })) {
    return std::nullopt;
  }
  const auto positions = all_positions(bounds);
  const std::size_t n = ins.size();
  // res[k][p]: resolution of position p on example k.
  std::vector<const std::vector<std::optional<std::size_t>>*> res(n);
  for (std::size_t k = 0; k < n; ++k) res[k] = &resolutions(ins[k], bounds);
  std::optional<Atom> best;
  for (std::size_t si = 0; si < positions.size(); ++si) {
    for (std::size_t ei = 0; ei < positions.size(); ++ei) {
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        const auto& i = (*res[k])[si];
        const auto& j = (*res[k])[ei];
        ok = i && j && *i <= *j && ins[k].compare(*i, *j - *i, outs[k]) == 0 &&
             *j - *i == outs[k].size();
      }
      if (!ok) continue;
      Atom a = tsg::SubStr{positions[si], positions[ei]};
      if (!best || less_atom(a, *best)) best = std::move(a);
    }
  }
  if (allow_const && !outs[0].empty() &&
      std::all_of(outs.begin(), outs.end(), [&](const std::string& o) { return o == outs[0]; })) {
    Atom c = tsg::ConstStr{outs[0]};
    if (!best || less_atom(c, *best)) best = std::move(c);
  }
  return best;
}

bool has_alnum(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) != 0; });
}

// Output cut into maximal input substrings; pieces without letters or
// digits, and characters missing from the input, are constants.
std::vector<std::pair<std::string, bool>> pieces_of(const std::string& in, const std::string& out) {
  std::vector<std::pair<std::string, bool>> pieces;  // text, is_constant
  auto add_const = [&](const std::string& t) {
    if (!pieces.empty() && pieces.back().second) {
      pieces.back().first += t;
    } else {
      pieces.emplace_back(t, true);
    }
  };
  std::size_t p = 0;
  while (p < out.size()) {
    std::size_t best = 0;
    for (std::size_t len = 1; p + len <= out.size(); ++len) {
      if (in.find(out.substr(p, len)) != std::string::npos) best = len;
      else break;
    }
    if (best == 0) {
      add_const(out.substr(p, 1));
      ++p;
      continue;
    }
    const std::string piece = out.substr(p, best);
    if (has_alnum(piece)) {
      pieces.emplace_back(piece, false);
    } else {
      add_const(piece);
    }
    p += best;
  }
  return pieces;
}

std::optional<Branch> best_branch(const std::vector<std::string>& ins,
                                  const std::vector<std::string>& outs,
                                  const tsg::SynthesisBounds& bounds, bool allow_const) {
  if (auto a = best_atom(ins, outs, bounds, allow_const)) return Branch{{*a}};
  std::vector<std::vector<std::pair<std::string, bool>>> all;
  for (std::size_t k = 0; k < ins.size(); ++k) all.push_back(pieces_of(ins[k], outs[k]));
  const auto& ref = all[0];
  if (ref.size() < 2 || ref.size() > bounds.max_atoms) return std::nullopt;
  for (const auto& ps : all) {
    if (ps.size() != ref.size()) return std::nullopt;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (ps[j].second != ref[j].second) return std::nullopt;
      if (ps[j].second && ps[j].first != ref[j].first) return std::nullopt;
    }
  }
  Branch b;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (ref[j].second) {
      b.atoms.push_back(tsg::ConstStr{ref[j].first});
      continue;
    }
    std::vector<std::string> piece_outs;
    for (const auto& ps : all) piece_outs.push_back(ps[j].first);
    auto a = best_atom(ins, piece_outs, bounds, false);
    if (!a) return std::nullopt;
    b.atoms.push_back(*a);
  }
  for (std::size_t k = 0; k < ins.size(); ++k) {
    if (eval_branch(b, ins[k]) != outs[k]) return std::nullopt;
  }
  return b;
}

std::vector<Predicate> predicates(const std::vector<std::string>& ins,
                                  const tsg::SynthesisBounds& bounds) {
  std::vector<Predicate> out;
  std::set<std::string> literals;
  for (const auto& s : ins) {
    std::size_t n = 0;
    while (n < s.size() && std::isalpha(static_cast<unsigned char>(s[n]))) ++n;
    if (n > 0) literals.insert(s.substr(0, n));
  }
  for (const auto& l : literals) out.push_back(tsg::StartsWithText{l});
  for (TokenClass tc : tsg::all_token_classes()) {
    if (tc == TokenClass::StartAnchor || tc == TokenClass::EndAnchor) continue;
    out.push_back(tsg::StartsWith{tc});
    out.push_back(tsg::EndsWith{tc});
    for (int occ = 1; occ <= bounds.max_occurrence; ++occ) out.push_back(tsg::Contains{tc, occ});
  }
  std::sort(out.begin(), out.end(), [](const Predicate& a, const Predicate& b) {
    return tsg::compare_predicates(a, b) < 0;
  });
  return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> matches(TokenClass tc, const std::string& s) {
  if (tc == TokenClass::StartAnchor) return {{0, 0}};
  if (tc == TokenClass::EndAnchor) return {{s.size(), s.size()}};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), class_regex(tc));
       it != std::sregex_iterator(); ++it) {
    const auto b = static_cast<std::size_t>(it->position());
    out.emplace_back(b, b + static_cast<std::size_t>(it->length()));
  }
  return out;
}

std::optional<std::size_t> resolve(const PositionExpr& p, const std::string& s) {
  if (const auto* abs = std::get_if<tsg::AbsPos>(&p)) {
    const long long n = static_cast<long long>(s.size());
    const long long i = abs->k >= 0 ? abs->k : n + abs->k + 1;
    if (i < 0 || i > n) return std::nullopt;
    return static_cast<std::size_t>(i);
  }
  const auto& r = std::get<tsg::RegPos>(p);
  if ((!r.left && !r.right) || r.occurrence == 0) return std::nullopt;
  const auto b = boundaries(r.left, r.right, s);
  const std::size_t n = static_cast<std::size_t>(std::abs(r.occurrence));
  if (n > b.size()) return std::nullopt;
  return r.occurrence > 0 ? b[n - 1] : b[b.size() - n];
}

bool holds(const Predicate& p, const std::string& s) {
  if (const auto* x = std::get_if<tsg::StartsWithText>(&p)) return s.rfind(x->text, 0) == 0;
  if (const auto* x = std::get_if<tsg::StartsWith>(&p)) {
    const auto m = matches(x->tc, s);
    return !m.empty() && m.front().first == 0;
  }
  if (const auto* x = std::get_if<tsg::EndsWith>(&p)) {
    const auto m = matches(x->tc, s);
    return !m.empty() && m.back().second == s.size();
  }
  const auto& c = std::get<tsg::Contains>(p);
  return c.occurrence >= 1 && matches(c.tc, s).size() >= static_cast<std::size_t>(c.occurrence);
}

std::optional<std::string> eval(const ExtractionProgram& prog, const std::string& s) {
  if (const auto* single = std::get_if<tsg::Single>(&prog.node)) return eval_branch(single->branch, s);
  const auto& sw = std::get<tsg::Switch>(prog.node);
  for (const auto& c : sw.cases) {
    if (holds(c.predicate, s)) return eval_branch(c.branch, s);
  }
  if (sw.fallback) return eval_branch(*sw.fallback, s);
  return std::nullopt;
}

std::vector<PositionExpr> all_positions(const tsg::SynthesisBounds& bounds) {
  std::vector<std::optional<TokenClass>> sides{std::nullopt};
  for (TokenClass tc : tsg::all_token_classes()) sides.emplace_back(tc);
  std::vector<PositionExpr> out;
  for (const auto& l : sides) {
    for (const auto& r : sides) {
      if (!l && !r) continue;
      for (int occ = 1; occ <= bounds.max_occurrence; ++occ) {
        out.push_back(tsg::RegPos{l, r, occ});
        out.push_back(tsg::RegPos{l, r, -occ});
      }
    }
  }
  for (int k = 0; k <= bounds.abs_window; ++k) out.push_back(tsg::AbsPos{k});
  for (int k = -bounds.abs_window - 1; k <= -1; ++k) out.push_back(tsg::AbsPos{k});
  return out;
}

std::size_t atom_count(const std::string& input, const std::string& output,
                       const tsg::SynthesisBounds& bounds) {
  const auto positions = all_positions(bounds);
  std::set<std::string> seen;
  for (const auto& sp : positions) {
    for (const auto& ep : positions) {
      const auto i = resolve(sp, input);
      const auto j = resolve(ep, input);
      if (i && j && *i <= *j && input.substr(*i, *j - *i) == output) {
        seen.insert(tsg::serialize(Atom{tsg::SubStr{sp, ep}}));
      }
    }
  }
  return seen.size() + 1;
}

std::optional<ExtractionProgram> synthesize(const tsg::ExampleSpec& spec,
                                            const tsg::SynthesisBounds& bounds) {
  if (spec.pairs.empty()) return std::nullopt;
  auto split = [&](const std::vector<std::size_t>& idx) {
    std::pair<std::vector<std::string>, std::vector<std::string>> io;
    for (std::size_t k : idx) {
      io.first.push_back(spec.pairs[k].input);
      io.second.push_back(spec.pairs[k].output);
    }
    return io;
  };
  std::vector<std::size_t> remaining(spec.pairs.size());
  for (std::size_t k = 0; k < remaining.size(); ++k) remaining[k] = k;

  {
    auto [ins, outs] = split(remaining);
    if (auto b = best_branch(ins, outs, bounds, true)) return ExtractionProgram{tsg::Single{*b}};
  }
  tsg::Switch sw;
  while (true) {
    if (sw.cases.size() + 1 > bounds.max_branches) return std::nullopt;
    auto [ins, outs] = split(remaining);
    if (auto b = best_branch(ins, outs, bounds, false)) {
      sw.fallback = *b;
      break;
    }
    // Each distinct truth set keeps the best predicate producing it.
    std::map<std::vector<std::size_t>, Predicate> by_set;
    for (const auto& p : predicates(ins, bounds)) {
      std::vector<std::size_t> t;
      for (std::size_t k : remaining) {
        if (holds(p, spec.pairs[k].input)) t.push_back(k);
      }
      if (t.empty() || t.size() == remaining.size()) continue;
      by_set.emplace(t, p);  // first insertion is the best-ranked one
    }
    std::vector<std::pair<std::vector<std::size_t>, Predicate>> order(by_set.begin(), by_set.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
      if (int c = tsg::compare_predicates(a.second, b.second)) return c < 0;
      return a.first < b.first;
    });
    bool found = false;
    for (const auto& [t, p] : order) {
      auto [tin, tout] = split(t);
      auto b = best_branch(tin, tout, bounds, false);
      if (!b) continue;
      sw.cases.push_back({p, *b});
      std::vector<std::size_t> rest;
      std::set_difference(remaining.begin(), remaining.end(), t.begin(), t.end(),
                          std::back_inserter(rest));
      remaining = rest;
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return ExtractionProgram{sw};
}

tsg::ExampleSpec synthesis_view(const tsg::ExampleSpec& spec) {
  tsg::ExampleSpec out = spec;
  if (std::find(spec.preprocess.begin(), spec.preprocess.end(), "tag_clauses") !=
      spec.preprocess.end()) {
    for (auto& p : out.pairs) p.input = tsg::tag_clauses(p.input).text;
  }
  return out;
}

std::vector<std::pair<std::string, tsg::ExampleSpec>> load_specs(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".jsonl") paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<std::pair<std::string, tsg::ExampleSpec>> out;
  for (const auto& p : paths) {
    out.emplace_back(std::filesystem::path(p).filename().string(), tsg::load_example_spec(p));
  }
  return out;
}

bool short_inputs(const tsg::ExampleSpec& spec, std::size_t limit) {
  return std::all_of(spec.pairs.begin(), spec.pairs.end(),
                     [&](const tsg::ExamplePair& p) { return p.input.size() <= limit; });
}

}  // namespace oracle
