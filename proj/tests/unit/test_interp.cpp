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
#include "flatcore/instrument.hpp"
#include "flatcore/interp.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using interp::RuntimeError;
using interp::RuntimeKind;
using interp::Value;
using testing::T;

const char* kMalicious = "https://localhost'); DROP TABLE users --/";

Value eval(const std::string& expr) {
  ast::Program empty;
  std::map<std::string, ast::MethodMeta> meta;
  interp::Interpreter in(empty, testing::lib(), meta);
  return in.evaluate(*front::parse_expr(expr));
}

front::ResolvedProgram instrumented(const std::string& file) {
  return instrument::instrument_program(testing::compile(testing::read(file)));
}

RuntimeError run_error(const front::ResolvedProgram& p, const std::string& method,
                       std::vector<Value> args, interp::InterpOptions opt = {}) {
  interp::Interpreter in(p, interp::Builtins::standard(), opt);
  try {
    in.run_method(method, args);
  } catch (const RuntimeError& e) {
    return e;
  }
  FAIL("no runtime error");
  return RuntimeError(RuntimeKind::BadArguments, "");
}

Value run(const std::string& src, const std::string& method, std::vector<Value> args) {
  auto p = testing::compile(src);
  interp::Interpreter in(p);
  return in.run_method(method, args);
}

TEST_SUITE("interp") {

TEST_CASE("expressions") {
  CHECK(eval("\"http://W\" in URL").as_bool());
  CHECK_FALSE(eval("\"http://\" in URL").as_bool());
  CHECK(eval("(\"http://example.com/a\" in URL)") == Value::boolean(true));
  CHECK(eval("if true then 1 else 1 / 0") == Value::integer(1));
  CHECK(eval("false and 1 / 0 == 1") == Value::boolean(false));
  CHECK(eval("true or 1 / 0 == 1") == Value::boolean(true));
  CHECK(eval("((x, y) -> x * y)(6, 7)") == Value::integer(42));
  CHECK(eval("-7 / 2") == Value::integer(-4));
  CHECK(eval("-7 % 2") == Value::integer(1));
  CHECK(eval("7 / -2") == Value::integer(-3));
  CHECK(eval("7 % -2") == Value::integer(1));
  CHECK(eval("concat(\"a\", \"b\") == \"ab\"") == Value::boolean(true));
  CHECK(eval("123456789012345678901234567890 + 1") ==
        Value::integer(ast::BigInt("123456789012345678901234567891")));
}

TEST_CASE("selection on a language-typed value") {
  auto v = run("method m(u: URL): String { return u[..host]; }", "m",
               {Value::string(U"http://example.com/a")});
  CHECK(v == Value::string(U"example.com"));
  auto p = testing::compile("method m(u: RelPath): String { return u[..part]; }");
  auto e = run_error(p, "m", {Value::string(U"foo/foo/")});
  CHECK(e.kind == RuntimeKind::SelectError);
  CHECK(e.expected == std::string("[..part] in RelPath"));
}

TEST_CASE("the malicious URL is an argument type error") {
  auto p = instrumented("samples/getname.flat");
  auto e = run_error(p, "getname", {Value::string(T(kMalicious))});
  CHECK(e.kind == RuntimeKind::ArgType);
  CHECK(e.expected == std::string("URL"));
  CHECK(e.arg_index == 0);
  std::string r = e.render();
  CHECK(r.find("Type mismatch for argument 0 of method getname") != std::string::npos);
  CHECK(r.find("expected type: URL") != std::string::npos);
  CHECK(r.find(kMalicious) != std::string::npos);
}

TEST_CASE("the empty hostname is a return type error") {
  auto p = instrumented("samples/getname_buggy.flat");
  auto e = run_error(p, "getname", {Value::string(U"http://W")});
  CHECK(e.kind == RuntimeKind::ReturnType);
  CHECK(e.expected == std::string("Host"));
  REQUIRE(e.actual.size() == 1);
  CHECK(e.actual[0] == Value::string(U""));
  CHECK(e.render().find("actual value:") != std::string::npos);
}

TEST_CASE("the fix returns the host") {
  for (const char* f : {"samples/getname_fixed.flat", "samples/getname_fixed_ensures.flat"}) {
    auto p = instrumented(f);
    interp::Interpreter in(p);
    CHECK(in.run_method("getname", {Value::string(U"http://W")}) == Value::string(U"W"));
    CHECK(in.run_method("getname", {Value::string(U"https://a.b/c/d")}) ==
          Value::string(U"a.b"));
  }
}

TEST_CASE("postconditions") {
  auto p = instrument::instrument_program(testing::compile(R"(
    method m(a: Int): Int ensures (a, r) -> r > a { return a - 1; }
  )"));
  auto e = run_error(p, "m", {Value::integer(3)});
  CHECK(e.kind == RuntimeKind::Post);
  REQUIRE(e.actual.size() == 1);
  CHECK(e.actual[0] == Value::integer(2));
}

TEST_CASE("preconditions at entry and at call sites") {
  auto p = instrument::instrument_program(testing::compile(R"(
    method b(n: Int): Int requires (n) -> n > 0 { return n; }
    method a(k: Int): Int { var r = call b(k - 5); return r; }
  )"));
  auto entry = run_error(p, "b", {Value::integer(0)});
  CHECK(entry.kind == RuntimeKind::Pre);
  CHECK(entry.call_stack.empty());
  auto nested = run_error(p, "a", {Value::integer(3)});
  CHECK(nested.kind == RuntimeKind::Pre);
  CHECK(nested.method == "b");
  REQUIRE(nested.actual.size() == 1);
  CHECK(nested.actual[0] == Value::integer(-2));
  interp::Interpreter in(p);
  CHECK(in.run_method("a", {Value::integer(9)}) == Value::integer(4));
}

TEST_CASE("local refinements") {
  auto p = instrument::instrument_program(testing::compile(R"(
    method m(a: Int): Int { var x: {v: Int | v < 10} = a; return x; }
  )"));
  auto e = run_error(p, "m", {Value::integer(12)});
  CHECK(e.kind == RuntimeKind::LocalType);
  CHECK(e.subject == "x");
}

TEST_CASE("user assertions") {
  auto p = testing::compile("method m(a: Int): Int { assert a > 0; return a; }");
  auto e = run_error(p, "m", {Value::integer(0)});
  CHECK(e.kind == RuntimeKind::AssertionFailed);
  CHECK(e.expected == std::string("a > 0"));
}

TEST_CASE("runtime failures") {
  auto p = testing::compile(R"(
    method quot(a: Int, b: Int): Int { return a / b; }
    method none(a: Int): Int { if a > 0 { return 1; } }
    method spin(a: Int): Int { while true { a = a + 1; } return a; }
    method deep(a: Int): Int { var r = call deep(a + 1); return r; }
  )");
  CHECK(run_error(p, "quot", {Value::integer(1), Value::integer(0)}).kind ==
        RuntimeKind::DivisionByZero);
  CHECK(run_error(p, "none", {Value::integer(0)}).kind == RuntimeKind::MissingReturn);
  interp::InterpOptions small;
  small.max_loop_iterations = 1000;
  CHECK(run_error(p, "spin", {Value::integer(0)}, small).kind ==
        RuntimeKind::BudgetExceeded);
  auto deep = run_error(p, "deep", {Value::integer(0)});
  CHECK(deep.kind == RuntimeKind::BudgetExceeded);
  CHECK(run_error(p, "nosuch", {}).kind == RuntimeKind::BadArguments);
  CHECK(run_error(p, "quot", {Value::integer(1)}).kind == RuntimeKind::BadArguments);
  CHECK(run_error(p, "quot", {Value::string(U"1"), Value::integer(1)}).kind ==
        RuntimeKind::BadArguments);
}

TEST_CASE("declared locals start from defaults") {
  auto v = run(R"(method m(): String {
      var i: Int; var b: Bool; var s: String;
      if not b and i == 0 { return concat(s, "x"); }
      return "y";
    })", "m", {});
  CHECK(v == Value::string(U"x"));
}

TEST_CASE("blocks scope their locals") {
  auto v = run(R"(method m(a: Int): Int {
      var x: Int = 1;
      if a > 0 { var y: Int = 5; x = x + y; } else { var y: Int = 7; x = x + y; }
      var i: Int = 0;
      while i < 3 { var t: Int = i; x = x + t; i = i + 1; }
      return x;
    })", "m", {Value::integer(1)});
  CHECK(v == Value::integer(9));
}

TEST_CASE("functions and higher-order values") {
  auto v = run(R"(
    def inc(x: Int): Int = x + 1
    def twice(f: (Int) -> Int, x: Int): Int = f(f(x))
    method m(a: Int): Int { return twice(inc, a) + twice((y) -> y * 2, a); }
  )", "m", {Value::integer(3)});
  CHECK(v == Value::integer(5 + 12));
}

TEST_CASE("values and json") {
  CHECK(interp::render(Value::string(U"a\"b")) == "\"a\\\"b\"");
  CHECK(interp::render(Value::boolean(true)) == "true");
  CHECK(interp::render(Value::integer(-5)) == "-5");
  CHECK(interp::from_json(nlohmann::ordered_json("x"), ast::SimpleType::string()) ==
        Value::string(U"x"));
  CHECK(interp::from_json(nlohmann::ordered_json(4), ast::SimpleType::integer()) ==
        Value::integer(4));
  CHECK_THROWS_AS(interp::from_json(nlohmann::ordered_json("x"), ast::SimpleType::integer()),
                  Error);
  CHECK(interp::default_value(ast::SimpleType::boolean()) == Value::boolean(false));
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
