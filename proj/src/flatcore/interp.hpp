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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flatcore/ast.hpp"
#include "flatcore/builtins.hpp"
#include "flatcore/front.hpp"
#include "flatcore/grammar.hpp"
#include "flatcore/runtime.hpp"

namespace flat::interp {

struct InterpOptions {
  // Per method invocation, summed over all loops of the invocation.
  uint64_t max_loop_iterations = 1'000'000;
  int max_call_depth = 1000;
  // Check argument types and the precondition of the entry method.
  bool check_entry = true;
};

// Whether `v` inhabits the erased type `t`.
bool has_type(const Value& v, const ast::SimpleType& t);

// Initial value of a declared but unassigned local.
Value default_value(const ast::SimpleType& t);

// Tree-walking evaluator. One instance per execution; not thread-safe.
class Interpreter {
 public:
  Interpreter(const ast::Program& program, const grammar::Registry& registry,
              const std::map<std::string, ast::MethodMeta>& meta,
              const Builtins& builtins = Builtins::standard(),
              InterpOptions options = {});
  Interpreter(const front::ResolvedProgram& program,
              const Builtins& builtins = Builtins::standard(),
              InterpOptions options = {});

  // Runs `name` on `args`. Throws RuntimeError.
  Value run_method(const std::string& name, const std::vector<Value>& args);

  // Evaluates a closed expression under `env`.
  Value evaluate(const ast::Expr& e, const std::map<std::string, Value>& env = {});

  // Applies a lambda expression to `args`.
  Value apply(const ast::ExprPtr& lambda, const std::vector<Value>& args);

 private:
  struct Frame;

  Value invoke(const std::string& name, const std::vector<Value>& args,
               const SourceLoc& call_site);
  void entry_checks(const ast::MethodMeta& meta, const std::vector<Value>& args);

  Value eval(const ast::Expr& e, Frame& f);
  Value eval_apply(const ast::Expr& e, Frame& f);
  Value call_closure(const Value& fn, const std::vector<Value>& args,
                     const SourceLoc& loc);
  Value call_builtin(const Builtin& b, const std::vector<Value>& args,
                     const SourceLoc& loc);
  Value call_function(const ast::FunDef& fn, const std::vector<Value>& args,
                      const SourceLoc& loc);
  Value select(const ast::Expr& e, const Value& subject);

  // Returns true when a `return` executed; the value is stored in `f`.
  bool exec_block(const std::vector<ast::Stmt>& body, Frame& f);
  bool exec(const ast::Stmt& s, Frame& f);
  void failed_assert(const ast::Stmt& s, Frame& f);

  [[noreturn]] void fail(RuntimeError error);
  void enter(const SourceLoc& loc);

  const ast::Program& program_;
  const grammar::Registry& registry_;
  const std::map<std::string, ast::MethodMeta>& meta_;
  const Builtins& builtins_;
  InterpOptions options_;
  std::map<std::string, const ast::FunDef*> functions_;
  std::map<std::string, const ast::MethodDef*> methods_;
  std::vector<StackEntry> stack_;
  int depth_ = 0;
};

}  // namespace flat::interp
