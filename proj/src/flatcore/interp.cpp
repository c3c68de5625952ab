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

#include "flatcore/interp.hpp"

#include <optional>

#include "flatcore/parse.hpp"
#include "flatcore/typecheck.hpp"
#include "flatcore/types.hpp"
#include "flatcore/xpath.hpp"

namespace flat::interp {

using ast::CheckKind;
using ast::Expr;
using ast::ExprPtr;
using ast::SimpleType;
using ast::Stmt;

bool has_type(const Value& v, const SimpleType& t) {
  switch (t.kind) {
    case SimpleType::Kind::Int: return v.kind() == Value::Kind::Int;
    case SimpleType::Kind::Bool: return v.kind() == Value::Kind::Bool;
    case SimpleType::Kind::String: return v.kind() == Value::Kind::Str;
    case SimpleType::Kind::Fun: return v.kind() == Value::Kind::Fun;
  }
  return false;
}

Value default_value(const SimpleType& t) {
  switch (t.kind) {
    case SimpleType::Kind::Int: return Value::integer(0);
    case SimpleType::Kind::Bool: return Value::boolean(false);
    default: return Value::string(Text());
  }
}

struct Interpreter::Frame {
  std::string method;
  std::vector<std::map<std::string, Value>> scopes{1};
  uint64_t iterations = 0;
  std::optional<Value> result;

  const Value* find(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void assign(const std::string& name, Value v) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) {
        found->second = std::move(v);
        return;
      }
    }
    scopes.back()[name] = std::move(v);
  }

  void bind(const std::string& name, Value v) {
    if (name != ast::kWildcard) scopes.back()[name] = std::move(v);
  }

  std::map<std::string, Value> flatten() const {
    std::map<std::string, Value> out;
    for (const auto& scope : scopes) {
      for (const auto& [k, v] : scope) out[k] = v;
    }
    return out;
  }
};

namespace {

RuntimeKind runtime_kind(CheckKind kind) {
  switch (kind) {
    case CheckKind::ArgType: return RuntimeKind::ArgType;
    case CheckKind::ReturnType: return RuntimeKind::ReturnType;
    case CheckKind::Pre: return RuntimeKind::Pre;
    case CheckKind::Post: return RuntimeKind::Post;
    case CheckKind::LocalType: return RuntimeKind::LocalType;
    case CheckKind::UserAssert: return RuntimeKind::UserAssert;
  }
  return RuntimeKind::AssertionFailed;
}

// RAII scope push for a frame.
class ScopeGuard {
 public:
  explicit ScopeGuard(std::vector<std::map<std::string, Value>>& scopes)
      : scopes_(scopes) {
    scopes_.emplace_back();
  }
  ~ScopeGuard() { scopes_.pop_back(); }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  std::vector<std::map<std::string, Value>>& scopes_;
};

}  // namespace

Interpreter::Interpreter(const ast::Program& program,
                         const grammar::Registry& registry,
                         const std::map<std::string, ast::MethodMeta>& meta,
                         const Builtins& builtins, InterpOptions options)
    : program_(program),
      registry_(registry),
      meta_(meta),
      builtins_(builtins),
      options_(options) {
  for (const auto& def : program_.defs) {
    if (auto* fn = std::get_if<ast::FunDef>(&def)) functions_[fn->name] = fn;
    if (auto* m = std::get_if<ast::MethodDef>(&def)) methods_[m->name] = m;
  }
}

Interpreter::Interpreter(const front::ResolvedProgram& program,
                         const Builtins& builtins, InterpOptions options)
    : Interpreter(program.program, program.registry, program.meta, builtins,
                  options) {}

void Interpreter::fail(RuntimeError error) {
  if (error.call_stack.empty()) error.call_stack = stack_;
  throw error;
}

void Interpreter::enter(const SourceLoc& loc) {
  if (depth_ >= options_.max_call_depth) {
    fail(RuntimeError(RuntimeKind::BudgetExceeded,
                      "call depth exceeds " +
                          std::to_string(options_.max_call_depth),
                      loc));
  }
}

// -- entry ------------------------------------------------------------------

Value Interpreter::run_method(const std::string& name,
                              const std::vector<Value>& args) {
  auto it = meta_.find(name);
  if (it == meta_.end() || !methods_.count(name)) {
    throw RuntimeError(RuntimeKind::BadArguments,
                       "no method named '" + name + "'");
  }
  const ast::MethodMeta& meta = it->second;
  if (args.size() != meta.params.size()) {
    throw RuntimeError(RuntimeKind::BadArguments,
                       "method " + name + " takes " +
                           std::to_string(meta.params.size()) +
                           " arguments, given " + std::to_string(args.size()),
                       meta.loc);
  }
  for (size_t i = 0; i < args.size(); ++i) {
    SimpleType t = typecheck::erase(*meta.params[i].type);
    if (!has_type(args[i], t)) {
      throw RuntimeError(RuntimeKind::BadArguments,
                         "argument " + std::to_string(i) + " of method " +
                             name + " must be " + t.str(),
                         meta.params[i].loc);
    }
  }
  stack_.clear();
  depth_ = 0;
  if (options_.check_entry) entry_checks(meta, args);
  return invoke(name, args, {});
}

void Interpreter::entry_checks(const ast::MethodMeta& meta,
                               const std::vector<Value>& args) {
  std::map<std::string, Value> env;
  for (size_t i = 0; i < args.size(); ++i) env[meta.params[i].name] = args[i];
  for (size_t i = 0; i < args.size(); ++i) {
    const ast::Param& p = meta.params[i];
    ExprPtr pred = types::check_assertion(*p.type, Expr::var(p.name));
    if (types::is_trivially_true(*pred)) continue;
    if (evaluate(*pred, env).as_bool()) continue;
    RuntimeError error(RuntimeKind::ArgType, print_expr(*pred), p.loc);
    error.method = meta.name;
    error.subject = p.name;
    error.arg_index = static_cast<int>(i);
    error.expected = ast::print_type(*p.type);
    error.actual = {args[i]};
    throw error;
  }
  if (types::is_trivially_true(meta.pre->body())) return;
  if (apply(meta.pre, args).as_bool()) return;
  RuntimeError error(RuntimeKind::Pre, meta.pre_text, meta.loc);
  error.method = meta.name;
  error.expected = meta.pre_text;
  error.actual = args;
  throw error;
}

Value Interpreter::invoke(const std::string& name,
                          const std::vector<Value>& args,
                          const SourceLoc& call_site) {
  const ast::MethodDef& m = *methods_.at(name);
  enter(call_site);
  stack_.push_back({name, call_site});
  ++depth_;
  Frame f;
  f.method = name;
  for (size_t i = 0; i < args.size(); ++i) f.bind(m.params[i].name, args[i]);
  bool returned = exec_block(m.body, f);
  if (!returned) {
    RuntimeError error(RuntimeKind::MissingReturn,
                       "method " + name + " ended without returning a value",
                       m.loc);
    error.method = name;
    fail(std::move(error));
  }
  --depth_;
  stack_.pop_back();
  return *f.result;
}

// -- expressions ------------------------------------------------------------

Value Interpreter::evaluate(const Expr& e,
                            const std::map<std::string, Value>& env) {
  stack_.clear();
  depth_ = 0;
  Frame f;
  for (const auto& [k, v] : env) f.bind(k, v);
  return eval(e, f);
}

Value Interpreter::apply(const ExprPtr& lambda, const std::vector<Value>& args) {
  stack_.clear();
  depth_ = 0;
  Frame f;
  for (size_t i = 0; i < args.size() && i < lambda->params.size(); ++i) {
    f.bind(lambda->params[i], args[i]);
  }
  return eval(lambda->body(), f);
}

Value Interpreter::eval(const Expr& e, Frame& f) {
  switch (e.kind) {
    case Expr::Kind::Int: return Value::integer(e.int_value);
    case Expr::Kind::Bool: return Value::boolean(e.bool_value);
    case Expr::Kind::Str: return Value::string(e.str_value);
    case Expr::Kind::Var: {
      if (const Value* v = f.find(e.name)) return *v;
      auto closure = std::make_shared<Closure>();
      closure->name = e.name;
      if (functions_.count(e.name)) {
        closure->kind = Closure::Kind::Def;
      } else if (builtins_.contains(e.name)) {
        closure->kind = Closure::Kind::Builtin;
      } else {
        fail(RuntimeError(RuntimeKind::BadArguments,
                          "unbound variable '" + e.name + "'", e.loc));
      }
      return Value::function(std::move(closure));
    }
    case Expr::Kind::Lambda: {
      auto closure = std::make_shared<Closure>();
      closure->kind = Closure::Kind::Lambda;
      // Non-owning: the program outlives every value of an execution.
      closure->lambda = ExprPtr(ExprPtr(), &e);
      closure->captured = f.flatten();
      return Value::function(std::move(closure));
    }
    case Expr::Kind::Apply:
      return eval_apply(e, f);
    case Expr::Kind::If:
      return eval(*e.kids[0], f).as_bool() ? eval(*e.kids[1], f)
                                           : eval(*e.kids[2], f);
    case Expr::Kind::InLang: {
      Value s = eval(e.subject(), f);
      const grammar::Language& lang = registry_.at(e.name);
      return Value::boolean(parse::recognize(*lang.cfg, s.as_str()));
    }
    case Expr::Kind::Select: {
      Value s = eval(e.subject(), f);
      try {
        return select(e, s);
      } catch (RuntimeError& error) {
        if (!error.loc.known()) error.loc = e.loc;
        fail(std::move(error));
      }
    }
  }
  return Value();
}

Value Interpreter::select(const Expr& e, const Value& subject) {
  const grammar::Language& lang = registry_.at(e.path.lang);
  try {
    parse::DerivationTree tree = parse::parse_tree(*lang.cfg, subject.as_str());
    return Value::string(xpath::select_unique(tree, e.path));
  } catch (const Error& error) {
    RuntimeError out(RuntimeKind::SelectError,
                     std::string(errc_name(error.code())) + ": " + error.what(),
                     e.loc);
    out.expected = "[" + e.path.str() + "] in " + e.path.lang;
    out.actual = {subject};
    throw out;
  }
}

Value Interpreter::eval_apply(const Expr& e, Frame& f) {
  const Expr& callee = e.callee();
  if (callee.kind == Expr::Kind::Var && !f.find(callee.name)) {
    if (callee.name == "and" && e.arity() == 2) {
      if (!eval(e.arg(0), f).as_bool()) return Value::boolean(false);
      return Value::boolean(eval(e.arg(1), f).as_bool());
    }
    if (callee.name == "or" && e.arity() == 2) {
      if (eval(e.arg(0), f).as_bool()) return Value::boolean(true);
      return Value::boolean(eval(e.arg(1), f).as_bool());
    }
  }
  if (callee.kind == Expr::Kind::Lambda) {
    std::vector<Value> args;
    for (size_t i = 0; i < e.arity(); ++i) args.push_back(eval(e.arg(i), f));
    ScopeGuard guard(f.scopes);
    for (size_t i = 0; i < args.size() && i < callee.params.size(); ++i) {
      f.bind(callee.params[i], args[i]);
    }
    return eval(callee.body(), f);
  }
  Value fn = eval(callee, f);
  std::vector<Value> args;
  for (size_t i = 0; i < e.arity(); ++i) args.push_back(eval(e.arg(i), f));
  return call_closure(fn, args, e.loc);
}

Value Interpreter::call_closure(const Value& fn, const std::vector<Value>& args,
                                const SourceLoc& loc) {
  if (fn.kind() != Value::Kind::Fun) {
    fail(RuntimeError(RuntimeKind::BadArguments,
                      "cannot apply " + render(fn), loc));
  }
  const Closure& c = fn.as_fun();
  switch (c.kind) {
    case Closure::Kind::Builtin:
      return call_builtin(*builtins_.find(c.name), args, loc);
    case Closure::Kind::Def:
      return call_function(*functions_.at(c.name), args, loc);
    case Closure::Kind::Lambda: {
      enter(loc);
      ++depth_;
      Frame inner;
      for (const auto& [k, v] : c.captured) inner.bind(k, v);
      inner.scopes.emplace_back();
      for (size_t i = 0; i < args.size() && i < c.lambda->params.size(); ++i) {
        inner.bind(c.lambda->params[i], args[i]);
      }
      Value out = eval(c.lambda->body(), inner);
      --depth_;
      return out;
    }
  }
  return Value();
}

Value Interpreter::call_builtin(const Builtin& b, const std::vector<Value>& args,
                                const SourceLoc& loc) {
  if (args.size() != b.params.size() && !b.equality) {
    fail(RuntimeError(RuntimeKind::BadArguments,
                      b.name + " takes " + std::to_string(b.params.size()) +
                          " arguments",
                      loc));
  }
  try {
    return b.impl(args);
  } catch (RuntimeError& error) {
    if (!error.loc.known()) error.loc = loc;
    fail(std::move(error));
  }
}

Value Interpreter::call_function(const ast::FunDef& fn,
                                 const std::vector<Value>& args,
                                 const SourceLoc& loc) {
  if (args.size() != fn.params.size()) {
    fail(RuntimeError(RuntimeKind::BadArguments,
                      fn.name + " takes " + std::to_string(fn.params.size()) +
                          " arguments",
                      loc));
  }
  enter(loc);
  ++depth_;
  Frame inner;
  inner.method = fn.name;
  for (size_t i = 0; i < args.size(); ++i) inner.bind(fn.params[i].name, args[i]);
  Value out = eval(*fn.body, inner);
  --depth_;
  return out;
}

// -- statements -------------------------------------------------------------

bool Interpreter::exec_block(const std::vector<Stmt>& body, Frame& f) {
  for (const auto& s : body) {
    if (exec(s, f)) return true;
  }
  return false;
}

bool Interpreter::exec(const Stmt& s, Frame& f) {
  switch (s.kind) {
    case Stmt::Kind::Decl:
      f.bind(s.name, default_value(typecheck::erase(*s.type)));
      return false;
    case Stmt::Kind::Assign:
      f.assign(s.name, eval(*s.expr, f));
      return false;
    case Stmt::Kind::DeclAssign:
      f.bind(s.name, eval(*s.expr, f));
      return false;
    case Stmt::Kind::Call: {
      std::vector<Value> args;
      for (const auto& a : s.args) args.push_back(eval(*a, f));
      f.bind(s.name, invoke(s.method, args, s.loc));
      return false;
    }
    case Stmt::Kind::Assert:
      if (!eval(*s.expr, f).as_bool()) failed_assert(s, f);
      return false;
    case Stmt::Kind::Return:
      f.result = eval(*s.expr, f);
      return true;
    case Stmt::Kind::If: {
      bool cond = eval(*s.expr, f).as_bool();
      ScopeGuard guard(f.scopes);
      return exec_block(cond ? s.body : s.orelse, f);
    }
    case Stmt::Kind::While:
      while (eval(*s.expr, f).as_bool()) {
        if (++f.iterations > options_.max_loop_iterations) {
          RuntimeError error(RuntimeKind::BudgetExceeded,
                             "more than " +
                                 std::to_string(options_.max_loop_iterations) +
                                 " loop iterations in method " + f.method,
                             s.loc);
          error.method = f.method;
          fail(std::move(error));
        }
        ScopeGuard guard(f.scopes);
        if (exec_block(s.body, f)) return true;
      }
      return false;
  }
  return false;
}

void Interpreter::failed_assert(const Stmt& s, Frame& f) {
  if (!s.check || s.check->kind == CheckKind::UserAssert) {
    RuntimeError error(RuntimeKind::AssertionFailed, print_expr(*s.expr),
                       s.loc);
    error.method = f.method;
    error.expected = print_expr(*s.expr);
    fail(std::move(error));
  }
  const ast::CheckInfo& info = *s.check;
  RuntimeError error(runtime_kind(info.kind), print_expr(*s.expr),
                     info.origin.known() ? info.origin : s.loc);
  error.method = info.method;
  error.subject = info.subject;
  error.arg_index = info.arg_index;
  error.expected = info.expected;
  if (info.kind == CheckKind::Pre && s.expr->kind == Expr::Kind::Apply) {
    for (size_t i = 0; i < s.expr->arity(); ++i) {
      error.actual.push_back(eval(s.expr->arg(i), f));
    }
  } else if (const Value* v = f.find(info.subject)) {
    error.actual = {*v};
  }
  // LocalType names the user variable, not the reserved temporary.
  if (info.kind != CheckKind::LocalType) error.subject.clear();
  fail(std::move(error));
}

}  // namespace flat::interp
