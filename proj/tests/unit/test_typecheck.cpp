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

#include "doctest.h"
#include "flatcore/front.hpp"
#include "flatcore/session.hpp"
#include "flatcore/typecheck.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using ast::SimpleType;

std::vector<typecheck::Diagnostic> diags(const std::string& src) {
  return session::compile({{"t.flat", src}}).diagnostics;
}

std::vector<std::string> codes(const std::string& src) {
  std::vector<std::string> out;
  for (const auto& d : diags(src)) out.push_back(d.code);
  return out;
}

TEST_SUITE("typecheck") {

TEST_CASE("erasure") {
  CHECK(typecheck::erase(*front::parse_type("URL")) == SimpleType::string());
  CHECK(typecheck::erase(*front::parse_type("{n: Int | n > 0}")) == SimpleType::integer());
  CHECK(typecheck::erase(*front::parse_type("Int")) == SimpleType::integer());
  CHECK(typecheck::erase(*front::parse_type("{b: {Bool | b} | true}")) ==
        SimpleType::boolean());
  CHECK(typecheck::erase(*front::parse_type("(Int, String) -> Bool")) ==
        SimpleType::fun({SimpleType::integer(), SimpleType::string()},
                        SimpleType::boolean()));
}

TEST_CASE("samples typecheck") {
  for (const char* f : {"samples/getname.flat", "samples/getname_buggy.flat",
                        "samples/getname_fixed.flat", "samples/getname_fixed_ensures.flat",
                        "samples/safesql.flat", "samples/teamname.flat"}) {
    INFO(f);
    CHECK(diags(testing::read(f)).empty());
  }
}

TEST_CASE("mismatches") {
  CHECK(codes("method m(): Int { var x: Int = true; return x; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(): Int { var x: Int; x = \"a\"; return x; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(): Int { return \"a\"; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(): Int { if 1 { return 1; } return 2; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(): Int { assert 1 + 1; return 2; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(): Int { return length(1, 2); }") ==
        std::vector<std::string>{"ArityMismatch"});
  CHECK(codes("method m(x: Int): Int { return x(1); }") ==
        std::vector<std::string>{"NotAFunction"});
}

TEST_CASE("methods are checked against their signatures") {
  CHECK(codes(R"(
    method n(a: Int): Int { return a; }
    method m(): Int { var v = call n("x"); return v; }
  )") == std::vector<std::string>{"TypeMismatch"});
  CHECK(codes(R"(
    method n(a: Int): Int { return a; }
    method m(): Int { var v = call n(1, 2); return v; }
  )") == std::vector<std::string>{"ArityMismatch"});
  CHECK(codes(R"(
    method n(a: Int): Int { return a; }
    method m(): String { var v = call n(1); return v; }
  )") == std::vector<std::string>{"TypeMismatch"});
  // Call results take the callee's return type; annotations are refused.
  CHECK_THROWS_AS(codes(R"(
    method n(a: Int): Int { return a; }
    method m(): Int { var v: Int = call n(1); return v; }
  )"), Error);
}

TEST_CASE("selection needs a language-typed subject") {
  CHECK(codes("method m(url: String): String { return url[..host]; }") ==
        std::vector<std::string>{"SubjectNotLanguageTyped"});
  CHECK(codes("method m(url: URL): String { return url[..host]; }").empty());
}

TEST_CASE("contracts must be Boolean") {
  CHECK(codes("method m(a: Int): Int requires (a) -> a + 1 { return a; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK_THROWS_AS(codes("method m(a: Int): Int requires (a, b) -> true { return a; }"),
                  Error);
  CHECK(codes("method m(a: Int): Int ensures (a, r) -> r > a { return a + 1; }").empty());
}

TEST_CASE("refinement predicates are checked") {
  CHECK(codes("method m(a: {n: Int | n + 1}): Int { return a; }") ==
        std::vector<std::string>{"TypeMismatch"});
  CHECK(codes("method m(a: {s: URL | length(s) > 3}): Int { return length(a); }").empty());
}

TEST_CASE("functions and lambdas") {
  CHECK(codes(R"(
    def inc(x: Int): Int = x + 1
    def twice(f: (Int) -> Int, x: Int): Int = f(f(x))
    method m(a: Int): Int { return twice(inc, a) + twice((y) -> y * 2, a); }
  )").empty());
  CHECK(codes("method m(a: Int): Int { var f = (y) -> y; return a; }") ==
        std::vector<std::string>{"CannotInferLambda"});
  CHECK(codes("def f(x: Int): Bool = eq == eq\nmethod m(): Int { return 1; }") ==
        std::vector<std::string>{"NotAFunctionValue", "NotAFunctionValue"});
}

TEST_CASE("diagnostics carry locations") {
  auto d = diags("method m(): Int {\n  var x: Int = true;\n  return x;\n}");
  REQUIRE(d.size() == 1);
  CHECK(d[0].loc.line == 2);
  CHECK(d[0].str().find("t.flat:2:") == 0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
