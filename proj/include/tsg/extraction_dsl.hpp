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

// Substring-extraction language: programs are concatenations of constants
// and input substrings delimited by position expressions, optionally
// guarded by predicates. See docs/dsl.md for the text grammar.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace tsg {

/// Fixed, ordered alphabet of token classes. The order is part of the
/// ranking function; append new classes at the end.
enum class TokenClass : std::uint8_t {
  Alphanumeric,  // [A-Za-z0-9]+
  Alpha,         // [A-Za-z]+
  Digits,        // [0-9]+
  Whitespace,    // \s+
  Dollar,        // \$
  Dash,          // -
  Dot,           // \.
  Slash,         // /
  Pipe,          // \|
  Quote,         // ["']
  OpenBrace,     // \{
  CloseBrace,    // \}
  Comma,         // ,
  Equals,        // =
  DollarWord,    // \$[A-Za-z0-9]+
  DashWord,      // -[A-Za-z0-9]+
  DottedName,    // [A-Za-z0-9_.@\-]+
  StartAnchor,   // ^
  EndAnchor,     // $
  TagOpen,       // <[A-Za-z0-9]+>
  TagClose,      // </[A-Za-z0-9]+>
};

inline constexpr std::size_t kTokenClassCount = 21;

std::string_view token_class_name(TokenClass tc);
std::optional<TokenClass> token_class_from_name(std::string_view name);
const std::array<TokenClass, kTokenClassCount>& all_token_classes();

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

/// Leftmost-longest, non-overlapping matches of `tc` in `s`.
std::vector<Span> find_matches(TokenClass tc, std::string_view s);

/// Match tables of one string for every token class, with a cache of
/// boundary lists per (left, right) pair. Not thread-safe; build one per
/// string per thread.
class StringIndex {
 public:
  explicit StringIndex(std::string_view s);

  std::string_view text() const { return text_; }
  std::size_t size() const { return text_.size(); }
  const std::vector<Span>& matches(TokenClass tc) const {
    return matches_[static_cast<std::size_t>(tc)];
  }
  bool starts_at(TokenClass tc, std::size_t i) const {
    return starts_[static_cast<std::size_t>(tc)][i] != 0;
  }
  bool ends_at(TokenClass tc, std::size_t i) const {
    return ends_[static_cast<std::size_t>(tc)][i] != 0;
  }

  /// Ascending positions i where a `left` match ends and a `right` match
  /// starts; an empty side imposes no constraint.
  const std::vector<std::size_t>& boundaries(std::optional<TokenClass> left,
                                             std::optional<TokenClass> right) const;

 private:
  std::string text_;
  std::array<std::vector<Span>, kTokenClassCount> matches_;
  std::array<std::vector<char>, kTokenClassCount> starts_;
  std::array<std::vector<char>, kTokenClassCount> ends_;
  mutable std::array<std::optional<std::vector<std::size_t>>,
                     (kTokenClassCount + 1) * (kTokenClassCount + 1)>
      boundary_cache_;
};

// --- AST ---

/// k >= 0 counts from the start; k < 0 resolves to len + k + 1.
struct AbsPos {
  int k = 0;
  bool operator==(const AbsPos&) const = default;
};

/// The |occurrence|-th boundary between a `left` match and a `right` match,
/// counted from the left when positive and from the right when negative.
struct RegPos {
  std::optional<TokenClass> left;
  std::optional<TokenClass> right;
  int occurrence = 1;
  bool operator==(const RegPos&) const = default;
};

using PositionExpr = std::variant<AbsPos, RegPos>;

struct ConstStr {
  std::string s;
  bool operator==(const ConstStr&) const = default;
};

struct SubStr {
  PositionExpr start;
  PositionExpr end;
  bool operator==(const SubStr&) const = default;
};

using Atom = std::variant<ConstStr, SubStr>;

struct Branch {
  std::vector<Atom> atoms;
  bool operator==(const Branch&) const = default;
};

struct StartsWith {
  TokenClass tc;
  bool operator==(const StartsWith&) const = default;
};

/// Literal prefix test, e.g. a query starting with "cluster".
struct StartsWithText {
  std::string text;
  bool operator==(const StartsWithText&) const = default;
};

struct EndsWith {
  TokenClass tc;
  bool operator==(const EndsWith&) const = default;
};

/// At least `occurrence` matches of `tc`.
struct Contains {
  TokenClass tc;
  int occurrence = 1;
  bool operator==(const Contains&) const = default;
};

using Predicate = std::variant<StartsWith, StartsWithText, EndsWith, Contains>;

struct Case {
  Predicate predicate;
  Branch branch;
  bool operator==(const Case&) const = default;
};

struct Single {
  Branch branch;
  bool operator==(const Single&) const = default;
};

/// First case whose predicate holds; `fallback` when none does.
struct Switch {
  std::vector<Case> cases;
  std::optional<Branch> fallback;
  bool operator==(const Switch&) const = default;
};

struct ExtractionProgram {
  std::variant<Single, Switch> node;

  bool is_single() const { return std::holds_alternative<Single>(node); }
  std::size_t branch_count() const;
  bool operator==(const ExtractionProgram&) const = default;
};

// --- evaluation ---

enum class EvalErrorKind { NoMatch, OutOfRange, InvertedSpan, NoCase };

struct EvalError {
  EvalErrorKind kind;
  std::string reason;
};

/// Value or evaluation failure. Evaluation never throws.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(EvalError error) : v_(std::move(error)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<0>(v_); }
  const EvalError& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, EvalError> v_;
};

Outcome<std::size_t> resolve_position(const PositionExpr& p, const StringIndex& s);
Outcome<std::size_t> resolve_position(const PositionExpr& p, std::string_view s);

bool holds(const Predicate& pred, const StringIndex& s);

Outcome<std::string> eval_branch(const Branch& b, const StringIndex& s);
Outcome<std::string> eval_program(const ExtractionProgram& prog, const StringIndex& s);
Outcome<std::string> eval_program(const ExtractionProgram& prog, std::string_view s);

// --- canonical text ---

std::string serialize(const PositionExpr& p);
std::string serialize(const Atom& a);
std::string serialize(const Branch& b);
std::string serialize(const Predicate& p);
std::string serialize(const ExtractionProgram& prog);

/// Throws Error(ParseError) naming the byte offset of the problem.
ExtractionProgram parse_program(std::string_view text);

std::string quote_string(std::string_view s);

// --- ranking ---

/// Total order used to pick among consistent programs; negative when `a`
/// ranks before (is preferred to) `b`.
int rank(const ExtractionProgram& a, const ExtractionProgram& b);
int compare_branches(const Branch& a, const Branch& b);
int compare_atoms(const Atom& a, const Atom& b);
int compare_positions(const PositionExpr& a, const PositionExpr& b);
int compare_predicates(const Predicate& a, const Predicate& b);

}  // namespace tsg
