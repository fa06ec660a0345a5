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

#include "tsg/extraction_dsl.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "tsg/error.hpp"

namespace tsg {

namespace {

constexpr std::array<std::string_view, kTokenClassCount> kNames = {
    "Alphanumeric", "Alpha",     "Digits",     "Whitespace", "Dollar",
    "Dash",         "Dot",       "Slash",      "Pipe",       "Quote",
    "OpenBrace",    "CloseBrace", "Comma",     "Equals",     "DollarWord",
    "DashWord",     "DottedName", "StartAnchor", "EndAnchor", "TagOpen",
    "TagClose"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Host names, dotted identifiers and user@domain names.
bool is_dotted(char c) { return is_alnum(c) || c == '_' || c == '.' || c == '-' || c == '@'; }

template <typename Pred>
std::size_t run(std::string_view s, std::size_t i, Pred pred) {
  std::size_t j = i;
  while (j < s.size() && pred(s[j])) ++j;
  return j - i;
}

// Length of the longest match of `tc` starting at i, 0 if none. Anchors are
// handled by the caller.
std::size_t match_at(TokenClass tc, std::string_view s, std::size_t i) {
  const char c = s[i];
  switch (tc) {
    case TokenClass::Alphanumeric: return run(s, i, is_alnum);
    case TokenClass::Alpha: return run(s, i, is_alpha);
    case TokenClass::Digits: return run(s, i, is_digit);
    case TokenClass::Whitespace: return run(s, i, is_space);
    case TokenClass::Dollar: return c == '$' ? 1 : 0;
    case TokenClass::Dash: return c == '-' ? 1 : 0;
    case TokenClass::Dot: return c == '.' ? 1 : 0;
    case TokenClass::Slash: return c == '/' ? 1 : 0;
    case TokenClass::Pipe: return c == '|' ? 1 : 0;
    case TokenClass::Quote: return (c == '"' || c == '\'') ? 1 : 0;
    case TokenClass::OpenBrace: return c == '{' ? 1 : 0;
    case TokenClass::CloseBrace: return c == '}' ? 1 : 0;
    case TokenClass::Comma: return c == ',' ? 1 : 0;
    case TokenClass::Equals: return c == '=' ? 1 : 0;
    case TokenClass::DollarWord:
    case TokenClass::DashWord: {
      const char lead = tc == TokenClass::DollarWord ? '$' : '-';
      if (c != lead || i + 1 >= s.size()) return 0;
      const std::size_t n = run(s, i + 1, is_alnum);
      return n == 0 ? 0 : n + 1;
    }
    case TokenClass::DottedName: return run(s, i, is_dotted);
    case TokenClass::TagOpen:
    case TokenClass::TagClose: {
      std::size_t j = i;
      if (c != '<') return 0;
      ++j;
      if (tc == TokenClass::TagClose) {
        if (j >= s.size() || s[j] != '/') return 0;
        ++j;
      }
      const std::size_t n = run(s, j, is_alnum);
      if (n == 0 || j + n >= s.size() || s[j + n] != '>') return 0;
      return j + n + 1 - i;
    }
    case TokenClass::StartAnchor:
    case TokenClass::EndAnchor: return 0;
  }
  return 0;
}

std::size_t tc_slot(std::optional<TokenClass> tc) {
  return tc ? static_cast<std::size_t>(*tc) + 1 : 0;
}

EvalError fail(EvalErrorKind kind, std::string reason) {
  return EvalError{kind, std::move(reason)};
}

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int cmp_int(long long a, long long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_str(const std::string& a, const std::string& b) {
  const int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string tc_text(std::optional<TokenClass> tc) {
  return tc ? std::string(token_class_name(*tc)) : std::string("_");
}

// Rank class of a position: RegPos before AbsPos.
int position_kind(const PositionExpr& p) { return std::holds_alternative<AbsPos>(p) ? 1 : 0; }

int atom_kind(const Atom& a) {
  if (const auto* sub = std::get_if<SubStr>(&a)) {
    return position_kind(sub->start) + position_kind(sub->end);
  }
  return 3;
}

}  // namespace

std::string_view token_class_name(TokenClass tc) {
  return kNames[static_cast<std::size_t>(tc)];
}

std::optional<TokenClass> token_class_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTokenClassCount; ++i) {
    if (kNames[i] == name) return static_cast<TokenClass>(i);
  }
  return std::nullopt;
}

const std::array<TokenClass, kTokenClassCount>& all_token_classes() {
  static const auto all = [] {
    std::array<TokenClass, kTokenClassCount> a{};
    for (std::size_t i = 0; i < kTokenClassCount; ++i) a[i] = static_cast<TokenClass>(i);
    return a;
  }();
  return all;
}

std::vector<Span> find_matches(TokenClass tc, std::string_view s) {
  if (tc == TokenClass::StartAnchor) return {Span{0, 0}};
  if (tc == TokenClass::EndAnchor) return {Span{s.size(), s.size()}};
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t n = match_at(tc, s, i);
    if (n > 0) {
      out.push_back({i, i + n});
      i += n;
    } else {
      ++i;
    }
  }
  return out;
}

StringIndex::StringIndex(std::string_view s) : text_(s) {
  for (std::size_t t = 0; t < kTokenClassCount; ++t) {
    matches_[t] = find_matches(static_cast<TokenClass>(t), text_);
    starts_[t].assign(text_.size() + 1, 0);
    ends_[t].assign(text_.size() + 1, 0);
    for (const auto& m : matches_[t]) {
      starts_[t][m.begin] = 1;
      ends_[t][m.end] = 1;
    }
  }
}

const std::vector<std::size_t>& StringIndex::boundaries(
    std::optional<TokenClass> left, std::optional<TokenClass> right) const {
  auto& slot = boundary_cache_[tc_slot(left) * (kTokenClassCount + 1) + tc_slot(right)];
  if (slot) return *slot;
  std::vector<std::size_t> out;
  if (left) {
    for (const auto& m : matches(*left)) {
      if (!right || starts_at(*right, m.end)) out.push_back(m.end);
    }
  } else if (right) {
    for (const auto& m : matches(*right)) out.push_back(m.begin);
  }
  slot = std::move(out);
  return *slot;
}

std::size_t ExtractionProgram::branch_count() const {
  if (is_single()) return 1;
  const auto& sw = std::get<Switch>(node);
  return sw.cases.size() + (sw.fallback ? 1 : 0);
}

Outcome<std::size_t> resolve_position(const PositionExpr& p, const StringIndex& s) {
  const std::size_t len = s.size();
  if (const auto* abs = std::get_if<AbsPos>(&p)) {
    const long long idx = abs->k >= 0 ? abs->k : static_cast<long long>(len) + abs->k + 1;
    if (idx < 0 || idx > static_cast<long long>(len)) {
      return fail(EvalErrorKind::OutOfRange, "position " + serialize(p) + " outside input");
    }
    return static_cast<std::size_t>(idx);
  }
  const auto& reg = std::get<RegPos>(p);
  if (!reg.left && !reg.right) {
    return fail(EvalErrorKind::NoMatch, "position without token classes");
  }
  const auto& b = s.boundaries(reg.left, reg.right);
  const std::size_t n = static_cast<std::size_t>(std::abs(reg.occurrence));
  if (reg.occurrence == 0 || n > b.size()) {
    return fail(EvalErrorKind::NoMatch, "no boundary for " + serialize(p));
  }
  return reg.occurrence > 0 ? b[n - 1] : b[b.size() - n];
}

Outcome<std::size_t> resolve_position(const PositionExpr& p, std::string_view s) {
  return resolve_position(p, StringIndex(s));
}

bool holds(const Predicate& pred, const StringIndex& s) {
  return std::visit(
      Overloaded{
          [&](const StartsWith& p) { return s.starts_at(p.tc, 0); },
          [&](const StartsWithText& p) { return s.text().substr(0, p.text.size()) == p.text; },
          [&](const EndsWith& p) { return s.ends_at(p.tc, s.size()); },
          [&](const Contains& p) {
            return p.occurrence >= 1 &&
                   s.matches(p.tc).size() >= static_cast<std::size_t>(p.occurrence);
          },
      },
      pred);
}

Outcome<std::string> eval_branch(const Branch& b, const StringIndex& s) {
  std::string out;
  for (const auto& atom : b.atoms) {
    if (const auto* c = std::get_if<ConstStr>(&atom)) {
      out += c->s;
      continue;
    }
    const auto& sub = std::get<SubStr>(atom);
    auto start = resolve_position(sub.start, s);
    if (!start) return start.error();
    auto end = resolve_position(sub.end, s);
    if (!end) return end.error();
    if (start.value() > end.value()) {
      return fail(EvalErrorKind::InvertedSpan, "start after end in " + serialize(atom));
    }
    out.append(s.text().substr(start.value(), end.value() - start.value()));
  }
  return out;
}

Outcome<std::string> eval_program(const ExtractionProgram& prog, const StringIndex& s) {
  if (const auto* single = std::get_if<Single>(&prog.node)) return eval_branch(single->branch, s);
  const auto& sw = std::get<Switch>(prog.node);
  for (const auto& c : sw.cases) {
    if (holds(c.predicate, s)) return eval_branch(c.branch, s);
  }
  if (sw.fallback) return eval_branch(*sw.fallback, s);
  return fail(EvalErrorKind::NoCase, "no case matches the input");
}

Outcome<std::string> eval_program(const ExtractionProgram& prog, std::string_view s) {
  return eval_program(prog, StringIndex(s));
}

// --- serialization ---

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string serialize(const PositionExpr& p) {
  if (const auto* abs = std::get_if<AbsPos>(&p)) return "abs(" + std::to_string(abs->k) + ")";
  const auto& r = std::get<RegPos>(p);
  return "reg(" + tc_text(r.left) + "," + tc_text(r.right) + "," +
         std::to_string(r.occurrence) + ")";
}

std::string serialize(const Atom& a) {
  if (const auto* c = std::get_if<ConstStr>(&a)) return "const(" + quote_string(c->s) + ")";
  const auto& s = std::get<SubStr>(a);
  return "sub(" + serialize(s.start) + "," + serialize(s.end) + ")";
}

std::string serialize(const Branch& b) {
  std::string out = "concat(";
  for (std::size_t i = 0; i < b.atoms.size(); ++i) {
    if (i) out += ',';
    out += serialize(b.atoms[i]);
  }
  return out + ")";
}

std::string serialize(const Predicate& p) {
  return std::visit(
      Overloaded{
          [](const StartsWith& x) { return "starts(" + tc_text(x.tc) + ")"; },
          [](const StartsWithText& x) { return "startsText(" + quote_string(x.text) + ")"; },
          [](const EndsWith& x) { return "ends(" + tc_text(x.tc) + ")"; },
          [](const Contains& x) {
            return "contains(" + tc_text(x.tc) + "," + std::to_string(x.occurrence) + ")";
          },
      },
      p);
}

std::string serialize(const ExtractionProgram& prog) {
  if (const auto* single = std::get_if<Single>(&prog.node)) {
    return "single(" + serialize(single->branch) + ")";
  }
  const auto& sw = std::get<Switch>(prog.node);
  std::string out = "switch(";
  for (std::size_t i = 0; i < sw.cases.size(); ++i) {
    if (i) out += ',';
    out += "case(" + serialize(sw.cases[i].predicate) + "," + serialize(sw.cases[i].branch) + ")";
  }
  if (sw.fallback) {
    if (!sw.cases.empty()) out += ',';
    out += "default(" + serialize(*sw.fallback) + ")";
  }
  return out + ")";
}

// --- parsing ---

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExtractionProgram program() {
    const std::string kw = ident();
    ExtractionProgram prog;
    if (kw == "single") {
      expect('(');
      prog.node = Single{branch()};
      expect(')');
    } else if (kw == "switch") {
      expect('(');
      Switch sw;
      while (true) {
        const std::size_t at = pos_;
        const std::string inner = ident();
        expect('(');
        if (inner == "case") {
          if (sw.fallback) error(at, "case after default");
          Predicate p = predicate();
          expect(',');
          sw.cases.push_back({std::move(p), branch()});
        } else if (inner == "default") {
          if (sw.fallback) error(at, "duplicate default");
          sw.fallback = branch();
        } else {
          error(at, "expected case or default");
        }
        expect(')');
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      expect(')');
      if (sw.cases.empty() || (sw.cases.size() == 1 && !sw.fallback)) {
        error(pos_, "switch needs two cases or a case and a default");
      }
      prog.node = std::move(sw);
    } else {
      error(0, "expected single or switch");
    }
    if (pos_ != s_.size()) error(pos_, "trailing characters");
    return prog;
  }

 private:
  [[noreturn]] void error(std::size_t at, const std::string& what) {
    throw Error(ErrorKind::ParseError, "offset " + std::to_string(at) + ": " + what);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) error(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    const std::size_t begin = pos_;
    while (pos_ < s_.size() && (is_alpha(s_[pos_]) || s_[pos_] == '_')) ++pos_;
    if (pos_ == begin) error(begin, "expected identifier");
    return std::string(s_.substr(begin, pos_ - begin));
  }

  int integer() {
    const std::size_t begin = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ == begin || (pos_ == begin + 1 && s_[begin] == '-')) error(begin, "expected integer");
    const std::string digits(s_.substr(begin, pos_ - begin));
    if (digits.size() > 9) error(begin, "integer out of range");
    return std::stoi(digits);
  }

  std::string string_literal() {
    const std::size_t begin = pos_;
    expect('"');
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) error(begin, "unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= s_.size()) error(begin, "unterminated escape");
      const char e = s_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'u': {
          if (pos_ + 4 > s_.size()) error(pos_, "short \\u escape");
          const std::string hex(s_.substr(pos_, 4));
          char* endp = nullptr;
          const long v = std::strtol(hex.c_str(), &endp, 16);
          if (endp != hex.c_str() + 4 || v >= 0x20) error(pos_, "bad \\u escape");
          out += static_cast<char>(v);
          pos_ += 4;
          break;
        }
        default: error(pos_ - 1, "unknown escape");
      }
    }
    return out;
  }

  std::optional<TokenClass> token_class(bool allow_empty) {
    const std::size_t at = pos_;
    const std::string name = ident();
    if (name == "_") {
      if (!allow_empty) error(at, "token class required");
      return std::nullopt;
    }
    auto tc = token_class_from_name(name);
    if (!tc) error(at, "unknown token class " + name);
    return tc;
  }

  PositionExpr position() {
    const std::size_t at = pos_;
    const std::string kw = ident();
    expect('(');
    PositionExpr p;
    if (kw == "abs") {
      p = AbsPos{integer()};
    } else if (kw == "reg") {
      RegPos r;
      r.left = token_class(true);
      expect(',');
      r.right = token_class(true);
      expect(',');
      r.occurrence = integer();
      if (!r.left && !r.right) error(at, "reg needs a token class on one side");
      if (r.occurrence == 0) error(at, "occurrence must be nonzero");
      p = r;
    } else {
      error(at, "expected abs or reg");
    }
    expect(')');
    return p;
  }

  Atom atom() {
    const std::size_t at = pos_;
    const std::string kw = ident();
    expect('(');
    Atom a;
    if (kw == "const") {
      std::string s = string_literal();
      if (s.empty()) error(at, "empty constant");
      a = ConstStr{std::move(s)};
    } else if (kw == "sub") {
      PositionExpr start = position();
      expect(',');
      a = SubStr{std::move(start), position()};
    } else {
      error(at, "expected const or sub");
    }
    expect(')');
    return a;
  }

  Branch branch() {
    const std::size_t at = pos_;
    if (ident() != "concat") error(at, "expected concat");
    expect('(');
    Branch b;
    b.atoms.push_back(atom());
    while (peek() == ',') {
      ++pos_;
      b.atoms.push_back(atom());
    }
    expect(')');
    return b;
  }

  Predicate predicate() {
    const std::size_t at = pos_;
    const std::string kw = ident();
    expect('(');
    Predicate p;
    if (kw == "starts") {
      p = StartsWith{*token_class(false)};
    } else if (kw == "startsText") {
      std::string s = string_literal();
      if (s.empty()) error(at, "empty prefix");
      p = StartsWithText{std::move(s)};
    } else if (kw == "ends") {
      p = EndsWith{*token_class(false)};
    } else if (kw == "contains") {
      TokenClass tc = *token_class(false);
      expect(',');
      const int occ = integer();
      if (occ < 1) error(at, "occurrence must be >= 1");
      p = Contains{tc, occ};
    } else {
      error(at, "unknown predicate " + kw);
    }
    expect(')');
    return p;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExtractionProgram parse_program(std::string_view text) { return Parser(text).program(); }

// --- ranking ---

int compare_positions(const PositionExpr& a, const PositionExpr& b) {
  auto key = [](const PositionExpr& p) {
    if (const auto* abs = std::get_if<AbsPos>(&p)) {
      const int mag = abs->k >= 0 ? abs->k : -abs->k - 1;
      return std::tuple<int, int, int, int, int>{1, mag, abs->k < 0, 0, 0};
    }
    const auto& r = std::get<RegPos>(p);
    return std::tuple<int, int, int, int, int>{0, r.occurrence < 0, std::abs(r.occurrence),
                                               static_cast<int>(tc_slot(r.left)),
                                               static_cast<int>(tc_slot(r.right))};
  };
  const auto ka = key(a);
  const auto kb = key(b);
  return ka < kb ? -1 : (kb < ka ? 1 : 0);
}

int compare_atoms(const Atom& a, const Atom& b) {
  if (int c = cmp_int(atom_kind(a), atom_kind(b))) return c;
  const auto* sa = std::get_if<SubStr>(&a);
  const auto* sb = std::get_if<SubStr>(&b);
  if (sa && sb) {
    if (int c = compare_positions(sa->start, sb->start)) return c;
    return compare_positions(sa->end, sb->end);
  }
  return cmp_str(std::get<ConstStr>(a).s, std::get<ConstStr>(b).s);
}

int compare_branches(const Branch& a, const Branch& b) {
  if (int c = cmp_int(static_cast<long long>(a.atoms.size()),
                      static_cast<long long>(b.atoms.size()))) {
    return c;
  }
  int ka = 0, kb = 0;
  for (const auto& x : a.atoms) ka += atom_kind(x);
  for (const auto& x : b.atoms) kb += atom_kind(x);
  if (int c = cmp_int(ka, kb)) return c;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    if (int c = compare_atoms(a.atoms[i], b.atoms[i])) return c;
  }
  return 0;
}

int compare_predicates(const Predicate& a, const Predicate& b) {
  auto tier = [](const Predicate& p) {
    return std::visit(Overloaded{[](const StartsWithText&) { return 0; },
                                 [](const StartsWith&) { return 1; },
                                 [](const EndsWith&) { return 2; },
                                 [](const Contains&) { return 3; }},
                      p);
  };
  if (int c = cmp_int(tier(a), tier(b))) return c;
  if (const auto* ta = std::get_if<StartsWithText>(&a)) {
    const auto& tb = std::get<StartsWithText>(b);
    if (int c = cmp_int(static_cast<long long>(ta->text.size()),
                        static_cast<long long>(tb.text.size()))) {
      return c;
    }
    return cmp_str(ta->text, tb.text);
  }
  auto tc_and_occ = [](const Predicate& p) {
    return std::visit(
        Overloaded{[](const StartsWithText&) { return std::pair<int, int>{0, 0}; },
                   [](const StartsWith& x) { return std::pair<int, int>{static_cast<int>(x.tc), 0}; },
                   [](const EndsWith& x) { return std::pair<int, int>{static_cast<int>(x.tc), 0}; },
                   [](const Contains& x) {
                     return std::pair<int, int>{static_cast<int>(x.tc), x.occurrence};
                   }},
        p);
  };
  const auto ka = tc_and_occ(a);
  const auto kb = tc_and_occ(b);
  return ka < kb ? -1 : (kb < ka ? 1 : 0);
}

int rank(const ExtractionProgram& a, const ExtractionProgram& b) {
  if (int c = cmp_int(static_cast<long long>(a.branch_count()),
                      static_cast<long long>(b.branch_count()))) {
    return c;
  }
  auto branches = [](const ExtractionProgram& p) {
    std::vector<const Branch*> out;
    if (const auto* s = std::get_if<Single>(&p.node)) {
      out.push_back(&s->branch);
    } else {
      const auto& sw = std::get<Switch>(p.node);
      for (const auto& c : sw.cases) out.push_back(&c.branch);
      if (sw.fallback) out.push_back(&*sw.fallback);
    }
    return out;
  };
  const auto ba = branches(a);
  const auto bb = branches(b);
  for (std::size_t i = 0; i < ba.size() && i < bb.size(); ++i) {
    if (int c = compare_branches(*ba[i], *bb[i])) return c;
  }
  if (!a.is_single() && !b.is_single()) {
    const auto& ca = std::get<Switch>(a.node).cases;
    const auto& cb = std::get<Switch>(b.node).cases;
    for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
      if (int c = compare_predicates(ca[i].predicate, cb[i].predicate)) return c;
    }
  }
  return cmp_str(serialize(a), serialize(b));
}

}  // namespace tsg
