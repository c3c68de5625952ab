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
#include "flatcore/front.hpp"
#include "flatcore/interp.hpp"
#include "flatcore/parse.hpp"
#include "flatcore/types.hpp"
#include "generators.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using interp::Value;
using testing::T;

ast::TypePtr ty(const std::string& text) { return front::parse_type(text); }

std::string norm(const std::string& text) {
  return types::normalize(*ty(text)).str();
}

// Satisfaction layer by layer, binding each layer's own binder.
class LayerOracle {
 public:
  LayerOracle() : interp_(empty_, testing::lib(), meta_) {}

  bool sat(const ast::Type& t, const Value& v) {
    switch (t.kind) {
      case ast::Type::Kind::Simple:
        return true;
      case ast::Type::Kind::Lang:
        return parse::recognize(testing::builtin_cfg(t.name), v.as_str());
      case ast::Type::Kind::Refine:
        if (!sat(*t.base, v)) return false;
        return interp_.evaluate(*t.pred, {{binder(t), v}}).as_bool();
    }
    return false;
  }

  Value eval(const ast::Expr& e, const std::string& var, const Value& v) {
    return interp_.evaluate(e, {{var, v}});
  }

 private:
  static std::string binder(const ast::Type& t) {
    for (const ast::Type* at = &t;; at = at->base.get()) {
      if (at->kind == ast::Type::Kind::Lang) return "s";
      if (at->kind == ast::Type::Kind::Simple) return "_";
      if (!at->var.empty()) return at->var;
    }
  }

  ast::Program empty_;
  std::map<std::string, ast::MethodMeta> meta_;
  interp::Interpreter interp_;
};

TEST_SUITE("types") {

TEST_CASE("normalization judgments") {
  CHECK(norm("Int") == "{_: Int | true}");
  CHECK(norm("{{n: Int | n > 0} | n < 10}") == "{n: Int | n > 0 and n < 10}");
  CHECK(norm("{n: {n: Int | n > 0} | n < 10}") == "{n: Int | n > 0 and n < 10}");
  CHECK(norm("Email") == "{s: String | s in Email}");
  CHECK(norm("{Int | true}") == "{_: Int | true}");
}

TEST_CASE("normalization renames inner binders") {
  auto n = types::normalize(*ty("{x: {y: Int | y > 0} | x < 10}"));
  CHECK(n.base == ast::SimpleType::integer());
  auto fv = ast::free_vars(*n.pred);
  CHECK(fv.count(n.var) == 1);
  for (const char* other : {"x", "y"}) {
    if (n.var != other) CHECK(fv.count(other) == 0);
  }
  LayerOracle o;
  for (int v : {-1, 0, 1, 9, 10}) {
    CHECK(o.eval(*n.pred, n.var, Value::integer(v)).as_bool() == (v > 0 && v < 10));
  }
}

TEST_CASE("normalization avoids capturing outer names") {
  // The outer predicate mentions a free `y`; the inner binder must not
  // capture it.
  auto n = types::normalize(*ty("{x: {y: Int | y > 0} | x > y}"));
  CHECK(n.var != "y");
  CHECK(ast::free_vars(*n.pred).count("y") == 1);
}

TEST_CASE("check predicates") {
  CHECK(types::is_trivially_true(types::check_predicate(*ty("String"))->body()));
  auto team = ty(
      R"({s: TeamNameFormat | not startswith(s, "-") and not endswith(s, "-")
          and not startswith(s, "_") and not endswith(s, "_")})");
  auto pred = types::check_predicate(*team);
  ast::Program empty;
  std::map<std::string, ast::MethodMeta> meta;
  interp::Interpreter in(empty, testing::lib(), meta);
  CHECK(in.apply(pred, {Value::string(U"R-_b")}).as_bool());
  CHECK_FALSE(in.apply(pred, {Value::string(U"-a")}).as_bool());
  CHECK_FALSE(in.apply(pred, {Value::string(U"a_")}).as_bool());
  CHECK_FALSE(in.apply(pred, {Value::string(U"a.b")}).as_bool());
}

TEST_CASE("check assertion substitutes the subject") {
  auto a = types::check_assertion(*ty("Host"), ast::Expr::var("host"));
  CHECK(ast::print_expr(*a) == "host in Host");
  auto b = types::check_assertion(*ty("{v: Int | v > 0}"), ast::Expr::var("b"));
  CHECK(ast::print_expr(*b) == "b > 0");
}

TEST_CASE("trivially true") {
  CHECK(types::is_trivially_true(*front::parse_expr("true")));
  CHECK(types::is_trivially_true(*front::parse_expr("true and true")));
  CHECK_FALSE(types::is_trivially_true(*front::parse_expr("s in URL")));
  CHECK_FALSE(types::is_trivially_true(*front::parse_expr("1 == 1")));
  CHECK_FALSE(types::is_trivially_true(*front::parse_expr("true or false")));
}

TEST_CASE("layer predicates run from the inside out") {
  auto layers = types::layer_predicates(*ty("{x: {IntExp | length(s) < 3} | x != \"1\"}"));
  REQUIRE(layers.size() == 3);
  CHECK(ast::print_expr(*layers[0]) == "(s) -> s in IntExp");
  CHECK(ast::print_expr(*layers[1]) == "(s) -> length(s) < 3");
  CHECK(ast::print_expr(*layers[2]) == "(x) -> x != \"1\"");
}

TEST_CASE("embedding round-trips") {
  auto n = types::normalize(*ty("{{n: Int | n > 0} | n < 10}"));
  auto again = types::normalize(*types::embed(n));
  CHECK(again.str() == n.str());
}

TEST_CASE("normalized satisfaction equals layer-wise satisfaction") {
  LayerOracle o;
  for (uint64_t i = 0; i < 300; ++i) {
    fuzz::Rng rng(fuzz::mix_seed(3, i));
    auto rt = gen::random_type(rng, 3);
    auto t = ty(rt.text);
    auto n = types::normalize(*t, testing::lib());
    for (int k = 0; k < 10; ++k) {
      Value v = gen::random_value(rng, rt.base);
      INFO(rt.text << " normalized to " << n.str() << " on " << interp::render(v));
      CHECK(o.eval(*n.pred, n.var, v).as_bool() == o.sat(*t, v));
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
