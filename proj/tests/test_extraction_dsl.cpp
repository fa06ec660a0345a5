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

#include <random>

#include "synth_oracle.hpp"
#include "tsg/extraction_dsl.hpp"

using namespace tsg;

namespace {

std::string random_text(std::mt19937& gen, std::size_t max_len) {
  static const std::string alphabet = "aZ9 $-./|'\"{},=<>_\tbQ3";
  std::string s;
  const std::size_t n = gen() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[gen() % alphabet.size()]);
  return s;
}

std::string eval_text(const std::string& program, const std::string& s) {
  const auto r = eval_program(parse_program(program), s);
  REQUIRE(r.ok());
  return r.value();
}

}  // namespace

TEST_CASE("token class names round-trip") {
  CHECK(all_token_classes().size() == kTokenClassCount);
  for (TokenClass tc : all_token_classes()) {
    CHECK(token_class_from_name(token_class_name(tc)) == tc);
  }
  CHECK_FALSE(token_class_from_name("Nope").has_value());
}

TEST_CASE("matches agree with the regex reference") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 400; ++trial) {
    const auto s = random_text(gen, 30);
    for (TokenClass tc : all_token_classes()) {
      std::vector<std::pair<std::size_t, std::size_t>> got;
      for (const auto& m : find_matches(tc, s)) got.emplace_back(m.begin, m.end);
      INFO(token_class_name(tc) << " on '" << s << "'");
      CHECK(got == oracle::matches(tc, s));
    }
  }
}

TEST_CASE("position resolution agrees with the reference on every bounded expression") {
  const SynthesisBounds bounds;
  const auto positions = oracle::all_positions(bounds);
  std::mt19937 gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_text(gen, 24);
    const StringIndex idx(s);
    for (const auto& p : positions) {
      const auto got = resolve_position(p, idx);
      const auto want = oracle::resolve(p, s);
      INFO(serialize(p) << " on '" << s << "'");
      CHECK(got.ok() == want.has_value());
      if (got.ok() && want) CHECK(got.value() == *want);
    }
  }
}

TEST_CASE("predicates agree with the reference") {
  std::mt19937 gen(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_text(gen, 20);
    const StringIndex idx(s);
    for (TokenClass tc : all_token_classes()) {
      for (const Predicate& p : {Predicate{StartsWith{tc}}, Predicate{EndsWith{tc}},
                                 Predicate{Contains{tc, 1}}, Predicate{Contains{tc, 2}}}) {
        INFO(serialize(p) << " on '" << s << "'");
        CHECK(holds(p, idx) == oracle::holds(p, s));
      }
    }
    CHECK(holds(StartsWithText{"aZ"}, idx) == (s.rfind("aZ", 0) == 0));
  }
}

TEST_CASE("absolute positions") {
  CHECK(resolve_position(AbsPos{0}, "hello").value() == 0);
  CHECK(resolve_position(AbsPos{-1}, "hello").value() == 5);
  CHECK(resolve_position(AbsPos{-3}, "hello").value() == 3);
  CHECK_FALSE(resolve_position(AbsPos{9}, "hello").ok());
}

TEST_CASE("dollar variable positions") {
  const std::string s = "$mb = Get-Mailbox -Identity x";
  const auto start = resolve_position(RegPos{std::nullopt, TokenClass::DollarWord, 1}, s);
  const auto end = resolve_position(RegPos{TokenClass::DollarWord, std::nullopt, 1}, s);
  REQUIRE(start.ok());
  REQUIRE(end.ok());
  CHECK(start.value() == 0);
  CHECK(end.value() == 3);
  CHECK(s.substr(start.value(), end.value() - start.value()) == "$mb");
}

TEST_CASE("last dot position") {
  const std::string s = "cluster('A').database('b').AutoTriageIcmNer | sort";
  const auto i = resolve_position(RegPos{TokenClass::Dot, TokenClass::Alphanumeric, -1}, s);
  REQUIRE(i.ok());
  CHECK(i.value() == s.rfind('.') + 1);
}

TEST_CASE("program evaluation") {
  CHECK(eval_text("single(concat(const(\"x\")))", "anything") == "x");
  CHECK(eval_text("single(concat(sub(reg(_,Alphanumeric,1),reg(_,Whitespace,1))))",
                  "TbaFilteringException | where time > ago(1d)") == "TbaFilteringException");
  CHECK(eval_text("single(concat(sub(reg(Slash,Alphanumeric,3),reg(Alphanumeric,Slash,3))))",
                  "https://adf.azure.com/subsc/SUB1/resourceGroups/rg1/factories/f") == "SUB1");
  CHECK(eval_text("single(concat(sub(abs(0),abs(2)),const(\"-\"),sub(abs(-3),abs(-1))))",
                  "abcdef") == "ab-ef");
}

TEST_CASE("switch takes the first holding case, then the default") {
  const auto prog = parse_program(
      "switch(case(startsText(\"cluster\"),concat(sub(reg(Dot,_,-1),reg(_,Whitespace,1)))),"
      "default(concat(sub(reg(_,Alphanumeric,1),reg(_,Whitespace,1)))))");
  CHECK(eval_program(prog, "cluster('a').database('b').Tbl | take 1").value() == "Tbl");
  CHECK(eval_program(prog, "Other | take 1").value() == "Other");
  const auto no_default =
      parse_program(
          "switch(case(starts(Dollar),concat(sub(abs(0),abs(1)))),"
          "case(starts(Dash),concat(sub(abs(0),abs(1)))))");
  const auto r = eval_program(no_default, "plain");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == EvalErrorKind::NoCase);
}

TEST_CASE("evaluation failures are values") {
  const auto r = eval_program(parse_program("single(concat(sub(reg(_,Pipe,1),abs(-1))))"), "no pipe");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == EvalErrorKind::NoMatch);
  const auto inv = eval_program(parse_program("single(concat(sub(abs(3),abs(1))))"), "abcdef");
  REQUIRE_FALSE(inv.ok());
  CHECK(inv.error().kind == EvalErrorKind::InvertedSpan);
}

TEST_CASE("serialization round-trips") {
  const char* texts[] = {
      "single(concat(sub(reg(_,Dollar,1),reg(Alphanumeric,Whitespace,1))))",
      "single(concat(const(\"a\\\"b\\\\c\"),sub(abs(-1),abs(-1))))",
      "switch(case(contains(Equals,2),concat(sub(abs(0),abs(1)))),case(ends(Alpha),"
      "concat(const(\"z\"))),default(concat(sub(reg(TagOpen,_,1),reg(_,TagClose,1)))))",
  };
  for (const char* t : texts) {
    const auto p = parse_program(t);
    CHECK(serialize(p) == t);
    CHECK(parse_program(serialize(p)) == p);
  }
}

TEST_CASE("malformed programs are parse errors") {
  for (const char* bad : {"", "single(", "single(concat(sub(abs(0))))", "single(concat())x",
                          "single(concat(sub(reg(Nope,_,1),abs(0))))",
                          "single(concat(sub(reg(_,_,1),abs(0))))",
                          "single(concat(sub(reg(_,Dot,0),abs(0))))", "switch()",
                          "switch(case(starts(Dollar),concat(sub(abs(0),abs(1)))))"}) {
    INFO(bad);
    try {
      parse_program(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
}

TEST_CASE("ranking") {
  const auto single = parse_program("single(concat(sub(abs(0),abs(1))))");
  const auto sw = parse_program(
      "switch(case(starts(Dollar),concat(sub(abs(0),abs(1)))),default(concat(sub(abs(0),abs(2)))))");
  CHECK(rank(single, sw) < 0);
  CHECK(rank(sw, single) > 0);

  const Atom reg = SubStr{RegPos{std::nullopt, TokenClass::Dollar, 3}, RegPos{TokenClass::Alpha, std::nullopt, 3}};
  const Atom abs = SubStr{AbsPos{0}, AbsPos{-1}};
  const Atom cst = ConstStr{"x"};
  CHECK(compare_atoms(reg, abs) < 0);
  CHECK(compare_atoms(abs, cst) < 0);

  CHECK(compare_positions(RegPos{TokenClass::Dot, std::nullopt, 3},
                          RegPos{TokenClass::Dot, std::nullopt, -1}) < 0);
  CHECK(compare_positions(RegPos{TokenClass::Dot, std::nullopt, 1},
                          RegPos{TokenClass::Dot, std::nullopt, 2}) < 0);
  CHECK(compare_positions(AbsPos{0}, AbsPos{-1}) < 0);
  CHECK(compare_positions(AbsPos{-1}, AbsPos{1}) < 0);

  CHECK(compare_predicates(StartsWith{TokenClass::Pipe}, EndsWith{TokenClass::Alphanumeric}) < 0);
  CHECK(compare_predicates(EndsWith{TokenClass::Pipe}, Contains{TokenClass::Alphanumeric, 1}) < 0);
  CHECK(compare_predicates(StartsWith{TokenClass::Alphanumeric}, StartsWith{TokenClass::Alpha}) < 0);
  CHECK(compare_predicates(StartsWithText{"let"}, StartsWith{TokenClass::Alpha}) < 0);

  // Same structure and scores: the serialized text decides.
  const auto a = parse_program("single(concat(const(\"a\")))");
  const auto b = parse_program("single(concat(const(\"b\")))");
  CHECK(rank(a, b) < 0);
  CHECK(rank(a, a) == 0);
}
