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

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flatcore/ast.hpp"
#include "json.hpp"

namespace flat::interp {

using ast::BigInt;

struct Closure;

class Value {
 public:
  enum class Kind { Bool, Int, Str, Fun };

  Value() = default;

  static Value integer(BigInt v) { return Value(Storage(std::move(v))); }
  static Value boolean(bool v) { return Value(Storage(v)); }
  static Value string(Text v) { return Value(Storage(std::move(v))); }
  static Value function(std::shared_ptr<const Closure> v) {
    return Value(Storage(std::move(v)));
  }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool as_bool() const { return std::get<bool>(v_); }
  const BigInt& as_int() const { return std::get<BigInt>(v_); }
  const Text& as_str() const { return std::get<Text>(v_); }
  const Closure& as_fun() const { return *std::get<3>(v_); }

  // Functions compare by identity.
  bool operator==(const Value& o) const { return v_ == o.v_; }

 private:
  using Storage = std::variant<bool, BigInt, Text, std::shared_ptr<const Closure>>;
  explicit Value(Storage v) : v_(std::move(v)) {}

  Storage v_;
};

struct Closure {
  enum class Kind { Lambda, Def, Builtin };

  Kind kind = Kind::Lambda;
  ast::ExprPtr lambda;                   // Lambda
  std::map<std::string, Value> captured; // Lambda
  std::string name;                      // Def, Builtin
};

// Int as digits, Bool as true/false, String as an escaped literal.
std::string render(const Value& v);

nlohmann::ordered_json to_json(const Value& v);

// Converts a JSON argument to a value of the given erased type. Throws
// Error(Usage) on a mismatch.
Value from_json(const nlohmann::ordered_json& j, const ast::SimpleType& type);

enum class RuntimeKind {
  ArgType,
  ReturnType,
  Pre,
  Post,
  LocalType,
  UserAssert,
  AssertionFailed,
  DivisionByZero,
  SelectError,
  MissingReturn,
  BudgetExceeded,
  BadArguments,
};

const char* runtime_kind_name(RuntimeKind kind);

struct StackEntry {
  std::string method;
  SourceLoc call_site;
};

class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(RuntimeKind kind, std::string detail, SourceLoc loc = {});

  RuntimeKind kind;
  std::string detail;
  SourceLoc loc;
  std::string method;   // method whose check failed
  std::string subject;  // LocalType: the variable
  int arg_index = -1;
  std::optional<std::string> expected;
  std::vector<Value> actual;  // one value, or the argument tuple for Pre
  std::vector<StackEntry> call_stack;

  // Multi-line report in the style of
  //   Type mismatch for argument 0 of method getname
  //     expected type: URL
  //     actual value:  "..."
  std::string render() const;

  // {"kind", "location", "expected", "actual"}
  nlohmann::ordered_json to_json() const;
};

}  // namespace flat::interp
