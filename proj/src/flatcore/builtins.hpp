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

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flatcore/ast.hpp"
#include "flatcore/runtime.hpp"

namespace flat::interp {

struct Builtin {
  std::string name;
  std::vector<ast::SimpleType> params;
  ast::SimpleType ret;
  // eq/ne: both operands share one non-function type.
  bool equality = false;
  std::function<Value(const std::vector<Value>&)> impl;
};

// Library functions visible to every program. Names are reserved: no
// definition, parameter or local may reuse them.
class Builtins {
 public:
  static const Builtins& standard();

  const Builtin* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  void add(Builtin builtin);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Builtin, std::less<>> table_;
};

// String functions with SMT-LIB Unicode string semantics: total, indices
// and lengths count scalar values.
namespace smt {

BigInt length(const Text& s);
Text at(const Text& s, const BigInt& i);
Text substr(const Text& s, const BigInt& i, const BigInt& n);
BigInt indexof(const Text& s, const Text& t, const BigInt& i);
bool contains(const Text& s, const Text& t);
bool prefixof(const Text& pre, const Text& s);
bool suffixof(const Text& suf, const Text& s);
Text replace(const Text& s, const Text& t, const Text& u);
BigInt str_to_int(const Text& s);
Text int_to_str(const BigInt& n);

}  // namespace smt

// Euclidean division: a = b*q + r with 0 <= r < |b|. Throws
// DivisionByZero when b is 0.
BigInt euclid_div(const BigInt& a, const BigInt& b);
BigInt euclid_mod(const BigInt& a, const BigInt& b);

}  // namespace flat::interp
