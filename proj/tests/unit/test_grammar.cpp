/*
 * Copyright 2026 The flatc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <functional>

#include "doctest.h"
#include "flatcore/grammar.hpp"
#include "flatcore/parse.hpp"
#include "oracles.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using grammar::Clause;
using testing::T;

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return Errc::Usage;
}

// All strings over `alphabet` of length at most `n`.
std::vector<Text> all_strings(const Text& alphabet, size_t n) {
  std::vector<Text> out{Text()};
  size_t begin = 0;
  for (size_t len = 1; len <= n; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (char32_t c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

void check_against_oracle(const std::string& rules, const Text& alphabet,
                          size_t n) {
  auto reg = testing::with_grammar("G", rules);
  const auto& lang = reg.at("G");
  oracle::BoundedLanguage oracle(*lang.grammar, reg, n, alphabet);
  for (const auto& s : all_strings(alphabet, n)) {
    INFO(rules << " on \"" << testing::S(s) << "\"");
    CHECK(parse::recognize(*lang.cfg, s) == oracle.contains(s));
  }
}

TEST_SUITE("grammar") {

TEST_CASE("IntExp parses to three rules") {
  auto g = grammar::parse_grammar(
      R"(start: (number op)* number; number: [0-9]+; op: "+" | "-";)",
      testing::lib(), "IntExp");
  REQUIRE(g.rules.size() == 3);
  CHECK(g.rules[0].name == "start");
  CHECK(g.rules[1].body.kind == Clause::Kind::Plus);
  CHECK(g.rules[2].body.kind == Clause::Kind::Alt);
}

TEST_CASE("TeamNameFormat uses a bounded repetition") {
  auto g = grammar::parse_grammar("start: char{1,20}; char: [a-zA-Z0-9-_ ];",
                                  testing::lib(), "TeamNameFormat");
  const Clause& rep = g.rules[0].body;
  REQUIRE(rep.kind == Clause::Kind::RepeatRange);
  CHECK(rep.min == 1);
  CHECK(rep.max == 20);
  const Clause& cls = g.rules[1].body;
  REQUIRE(cls.kind == Clause::Kind::CharSet);
  auto has = [&](char32_t c) {
    for (const auto& r : cls.ranges) {
      if (r.lo <= c && c <= r.hi) return true;
    }
    return false;
  };
  for (char32_t c : U"azAZ09-_ ") {
    if (c) CHECK(has(c));
  }
  CHECK_FALSE(has(U'.'));
  CHECK_FALSE(has(U','));
}

TEST_CASE("malformed grammars are rejected") {
  CHECK(error_of([] { grammar::parse_grammar(R"(start: "a")", testing::lib()); }) ==
        Errc::Syntax);
  CHECK(error_of([] { testing::with_grammar("G", "start: x;"); }) ==
        Errc::UndefinedNonterminal);
  CHECK(error_of([] { testing::with_grammar("G", R"(a: "a";)"); }) ==
        Errc::MissingStart);
  CHECK(error_of([] { testing::with_grammar("G", R"(start: "a"; start: "b";)"); }) ==
        Errc::DuplicateRule);
  CHECK(error_of([] { testing::with_grammar("G", R"(start: "a"{3,2};)"); }) ==
        Errc::BadRepetition);
  CHECK(error_of([] { testing::with_grammar("G", "start: [z-a];"); }) ==
        Errc::BadCharRange);
  CHECK(error_of([] { testing::with_grammar("G", "start: a; a: a;"); }) ==
        Errc::NonProductiveNonterminal);
}

TEST_CASE("min depth") {
  auto single = testing::cfg("G", R"(start: "a";)");
  CHECK(single->min_depth[single->start] == 1);
  const auto& ie = testing::builtin_cfg("IntExp");
  CHECK(ie.min_depth[ie.start] > 0);
  CHECK(ie.min_depth[ie.start] < 10);
  for (size_t i = 0; i < ie.nonterminals.size(); ++i) {
    CHECK(ie.min_depth[i] >= 1);
  }
}

TEST_CASE("star lowers to a right-recursive nonterminal") {
  auto c = testing::cfg("G", R"(start: "a"*;)");
  const auto& start = c->nonterminals[c->start];
  REQUIRE(start.alternatives.size() == 1);
  REQUIRE(start.alternatives[0].size() == 1);
  int n = start.alternatives[0][0].nonterminal;
  REQUIRE(n >= 0);
  const auto& loop = c->nonterminals[n];
  CHECK(loop.synthesized());
  REQUIRE(loop.alternatives.size() == 2);
  CHECK(loop.alternatives[0].empty());
  REQUIRE(loop.alternatives[1].size() == 2);
  CHECK(loop.alternatives[1][0].literal == U"a");
  CHECK(loop.alternatives[1][1].nonterminal == n);
}

TEST_CASE("bounded repetition accepts exactly 1..20 copies") {
  auto c = testing::cfg("G", R"(start: "c"{1,20};)");
  auto reg = testing::with_grammar("G", R"(start: "c"{1,20};)");
  oracle::BoundedLanguage oracle(*reg.at("G").grammar, reg, 22);
  for (size_t n = 0; n <= 22; ++n) {
    Text s(n, U'c');
    bool expected = n >= 1 && n <= 20;
    CHECK(parse::recognize(*c, s) == expected);
    CHECK(oracle.contains(s) == expected);
  }
}

TEST_CASE("imports are inlined under mangled names") {
  auto reg = testing::with_grammar(
      "SafeSQL", R"g(start: "INSERT INTO hosts VALUES " "('" Host "')";)g");
  const auto& c = *reg.at("SafeSQL").cfg;
  int host = c.find("Host::start");
  REQUIRE(host >= 0);
  CHECK(c.nonterminals[host].label == "Host");
  CHECK(c.find("Host::label") >= 0);
  CHECK(c.labels.count("Host") == 1);
  CHECK(c.labels.count("label") == 1);
}

TEST_CASE("recognizer agrees with bounded enumeration") {
  check_against_oracle(R"(start: (number op)* number; number: [0-9]+; op: "+" | "-";)",
                       U"01+-", 6);
  check_against_oracle(R"(start: (part "/")*; part: "foo" | ".." | ".";)", U"./fo",
                       7);
  check_against_oracle(R"(start: "a"? "b"+ "c"{2};)", U"abc", 6);
  check_against_oracle(R"(start: x{0,3} "!"; x: "ab" | "a";)", U"ab!", 7);
  check_against_oracle(R"(start: [^a-c]* "a";)", U"abcd1", 4);
  check_against_oracle(R"g(start: ("(" start ")" start)?;)g", U"()", 8);
  check_against_oracle(R"(start: a | b; a: "x" a | "y"; b: a "z";)", U"xyz", 5);
}

TEST_CASE("printing and reparsing a grammar is the identity") {
  for (const auto& name : testing::lib().names()) {
    const auto& g = *testing::lib().at(name).grammar;
    std::string printed = grammar::print_grammar(g);
    INFO(name << ":\n" << printed);
    auto again = grammar::parse_grammar(printed, testing::lib(), name);
    CHECK(again.rules == g.rules);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
