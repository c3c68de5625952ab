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
#include <set>
#include <string>
#include <vector>

#include "flatcore/ast.hpp"
#include "flatcore/front.hpp"

namespace flat::instrument {

// Mints `$z1`, `$z2`, ... skipping names already present in a method.
class FreshNamer {
 public:
  explicit FreshNamer(std::set<std::string> taken = {});
  std::string next();

 private:
  std::set<std::string> taken_;
  int counter_ = 0;
};

// Ordered, block-scoped variable typing.
class TypingContext {
 public:
  TypingContext();
  void push();
  void pop();
  void bind(const std::string& name, ast::TypePtr type);
  // Most recent binding, or null.
  ast::TypePtr lookup(const std::string& name) const;

 private:
  std::vector<std::map<std::string, ast::TypePtr>> scopes_;
};

// Rewrites one method body. `ctx` starts with the parameters of `m`;
// `meta` supplies the callee signatures and contracts for Call.
std::vector<ast::Stmt> instrument_body(
    TypingContext& ctx, const ast::MethodMeta& m,
    const std::vector<ast::Stmt>& body,
    const std::map<std::string, ast::MethodMeta>& meta);

// Every method gets an instrumented, contract-free body. Functions,
// languages and the method metadata are kept.
front::ResolvedProgram instrument_program(const front::ResolvedProgram& p);

}  // namespace flat::instrument
