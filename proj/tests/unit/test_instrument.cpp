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
#include "flatcore/ast.hpp"
#include "flatcore/instrument.hpp"
#include "flatcore/interp.hpp"
#include "flatcore/session.hpp"
#include "generators.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using interp::RuntimeError;
using interp::Value;

std::string instrumented(const front::ResolvedProgram& p) {
  return ast::print_program(instrument::instrument_program(p).program);
}

std::string instrumented(const std::string& src) {
  return instrumented(testing::compile(src));
}

// Body of the only method, instrumented.
std::string body(const std::string& src) {
  auto p = instrument::instrument_program(testing::compile(src));
  const auto& m = std::get<ast::MethodDef>(p.program.defs.back());
  return ast::print_stmts(m.body);
}

std::string outcome(const front::ResolvedProgram& p, const std::string& method,
                    const std::vector<Value>& args,
                    const interp::Builtins& builtins) {
  try {
    interp::Interpreter in(p, builtins);
    return "value " + interp::render(in.run_method(method, args));
  } catch (const RuntimeError& e) {
    return std::string("error ") + interp::runtime_kind_name(e.kind) + ": " + e.detail;
  }
}

// Check comments come from assertion metadata, which printing does not
// preserve.
std::string without_comments(const std::string& text) {
  std::string out;
  size_t at = 0;
  while (at < text.size()) {
    size_t end = text.find('\n', at);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(at, end - at);
    size_t mark = line.find("  # ");
    if (mark != std::string::npos) line.erase(mark);
    out += line + "\n";
    at = end + 1;
  }
  return out;
}

TEST_SUITE("instrument") {

TEST_CASE("golden dumps") {
  for (const char* name : {"rules", "getname", "trivial"}) {
    std::string dir = std::string("tests/fixtures/instrument/") + name;
    INFO(name);
    CHECK(instrumented(testing::read(dir + ".flat")) == testing::read(dir + ".out"));
  }
}

TEST_CASE("trivial programs are unchanged") {
  auto p = testing::compile(testing::read("tests/fixtures/instrument/trivial.flat"));
  CHECK(instrumented(p) == ast::print_program(p.program));
}

TEST_CASE("assignment to a language-typed local") {
  CHECK(body("method m(u: URL): Int { var host: Host; host = u[..host]; return 1; }") ==
        "var host: Host;\n"
        "host = u[..host];\n"
        "assert host in Host;  # LocalType: Host\n"
        "return 1;\n");
}

TEST_CASE("redundant assertions are dropped") {
  CHECK(body("method m(a: Int): Int { var x: Int; x = a; return x; }") ==
        "var x: Int;\nx = a;\nreturn x;\n");
}

TEST_CASE("calls check the callee precondition") {
  std::string out = instrumented(R"(
    method b(n: Int): Int requires (n) -> n > 0 { return n; }
    method a(): Int { var r = call b(5); return r; }
  )");
  CHECK(out.find("var $z1 = 5;\n  assert ((n) -> n > 0)($z1);  # Pre: (n) -> n > 0\n"
                 "  var r = call b($z1);") != std::string::npos);
}

TEST_CASE("fresh names avoid existing ones") {
  instrument::FreshNamer names({"$z1", "$z3"});
  CHECK(names.next() == "$z2");
  CHECK(names.next() == "$z4");
  std::string out = body(R"(method m(x: Int): {r: Int | r > 0}
    { var y: Int = x; return 1; })");
  CHECK(out.find("var $z1 = 1;") != std::string::npos);
}

TEST_CASE("assertions keep their origin") {
  auto p = instrument::instrument_program(
      testing::compile(testing::read("samples/getname.flat")));
  const auto& m = *p.program.method("getname");
  int checks = 0;
  for (const auto& s : m.body) {
    if (!s.check) continue;
    ++checks;
    CHECK(s.synthesized);
    CHECK(s.check->method == "getname");
    CHECK(s.check->origin.line > 0);
  }
  CHECK(checks == 2);
}

TEST_CASE("instrumentation is idempotent") {
  for (const char* f : {"samples/getname.flat", "samples/safesql.flat",
                        "samples/teamname.flat", "tests/fixtures/instrument/rules.flat"}) {
    INFO(f);
    auto once = instrument::instrument_program(testing::compile(testing::read(f)));
    auto twice = instrument::instrument_program(once);
    CHECK(ast::print_program(twice.program) == ast::print_program(once.program));

    // Through the printed form.
    front::ParseOptions opt;
    opt.allow_reserved = true;
    auto reparsed = session::compile({{"again.flat", ast::print_program(once.program)}},
                                     interp::Builtins::standard(), opt);
    REQUIRE(reparsed.ok());
    CHECK(without_comments(instrumented(reparsed.program)) ==
          without_comments(ast::print_program(once.program)));
  }
}

TEST_CASE("every expression is evaluated as often as before") {
  testing::TickBuiltins tick;
  auto p = testing::compile(R"(
    method b(n: {v: Int | v >= 0}): {r: Int | r >= 0}
      requires (n) -> n < 1000
      ensures (n, r) -> r >= n
    { return tick(n) + tick(1); }
    method a(x: {v: Int | v >= 0}): Int
    {
      var y: {w: Int | w >= 0} = tick(x);
      y = tick(y + 1);
      var r = call b(tick(y));
      return tick(r);
    }
  )", tick.builtins);
  auto q = instrument::instrument_program(p);
  for (int x : {0, 3, 17}) {
    *tick.calls = 0;
    auto plain = outcome(p, "a", {Value::integer(x)}, tick.builtins);
    long plain_calls = *tick.calls;
    *tick.calls = 0;
    auto checked = outcome(q, "a", {Value::integer(x)}, tick.builtins);
    CHECK(plain == checked);
    CHECK(plain_calls == *tick.calls);
    CHECK(plain_calls == 6);
  }
}

TEST_CASE("differential: trivial contracts change nothing") {
  testing::TickBuiltins tick;
  for (uint64_t i = 0; i < 20; ++i) {
    fuzz::Rng rng(fuzz::mix_seed(21, i));
    for (bool tautologies : {false, true}) {
      auto rp = gen::random_program(rng, tautologies);
      INFO(rp.source);
      auto p = testing::compile(rp.source, tick.builtins);
      auto q = instrument::instrument_program(p);
      if (!tautologies) {
        CHECK(ast::print_program(q.program) == ast::print_program(p.program));
      }
      for (int k = 0; k < 5; ++k) {
        auto args = gen::random_inputs(rng, rp);
        *tick.calls = 0;
        auto plain = outcome(p, rp.entry, args, tick.builtins);
        long calls = *tick.calls;
        *tick.calls = 0;
        CHECK(outcome(q, rp.entry, args, tick.builtins) == plain);
        CHECK(*tick.calls == calls);
      }
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
