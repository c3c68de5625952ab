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

#include "flatcore/typecheck.hpp"

#include <map>
#include <optional>

#include "flatcore/types.hpp"

namespace flat::typecheck {

using ast::Expr;
using ast::SimpleType;
using ast::Stmt;
using ast::Type;

std::string Diagnostic::str() const {
  std::string out;
  if (loc.known()) out += loc.str() + ": ";
  return out + code + ": " + message;
}

SimpleType erase(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Simple: return t.simple;
    case Type::Kind::Lang: return SimpleType::string();
    case Type::Kind::Refine: return erase(*t.base);
  }
  return SimpleType::string();
}

namespace {

// Unknown types (after an earlier error) are nullopt and never reported
// again.
using MaybeType = std::optional<SimpleType>;

class Checker {
 public:
  Checker(front::ResolvedProgram& rp, const interp::Builtins& builtins)
      : rp_(rp), builtins_(builtins) {
    for (const auto& def : rp.program.defs) {
      if (auto* fn = std::get_if<ast::FunDef>(&def)) functions_[fn->name] = fn;
      if (auto* m = std::get_if<ast::MethodDef>(&def)) methods_[m->name] = m;
    }
  }

  std::vector<Diagnostic> run() {
    for (auto& def : rp_.program.defs) {
      if (auto* fn = std::get_if<ast::FunDef>(&def)) function(*fn);
      if (auto* m = std::get_if<ast::MethodDef>(&def)) method(*m);
    }
    return std::move(diags_);
  }

 private:
  void report(const std::string& code, const std::string& message,
              const SourceLoc& loc) {
    diags_.push_back({code, message, loc});
  }

  // -- scopes --------------------------------------------------------------

  void push() { scopes_.emplace_back(); }
  void pop() { scopes_.pop_back(); }
  void bind(const std::string& name, MaybeType t) {
    scopes_.back()[name] = std::move(t);
  }
  const MaybeType* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  // -- types ---------------------------------------------------------------

  void check_type(const Type& t, const SourceLoc& at, bool allow_function) {
    if (t.kind == Type::Kind::Simple) {
      if (t.simple.is_fun() && !allow_function) {
        report("FunctionTypeNotAllowed",
               "function types may only appear in def signatures", at);
      }
      return;
    }
    if (t.kind == Type::Kind::Lang) return;
    if (types::mentions_function(*t.base)) {
      report("FunctionTypeNotAllowed",
             "refinement base types cannot contain function types", t.loc);
      return;
    }
    check_type(*t.base, at, false);
    push();
    std::string binder = types::effective_binder(t);
    if (binder != ast::kWildcard) bind(binder, erase(*t.base));
    check(*t.pred, SimpleType::boolean(), "refinement predicate");
    pop();
  }

  // -- expressions ---------------------------------------------------------

  void mismatch(const SimpleType& want, const SimpleType& got,
                const std::string& what, const SourceLoc& at) {
    report("TypeMismatch",
           what + ": expected " + want.str() + ", found " + got.str(), at);
  }

  void check(const Expr& e, const SimpleType& want, const std::string& what) {
    if (e.kind == Expr::Kind::Lambda && want.is_fun()) {
      if (e.params.size() != want.params.size()) {
        report("ArityMismatch",
               what + ": lambda takes " + std::to_string(e.params.size()) +
                   " parameters, expected " +
                   std::to_string(want.params.size()),
               e.loc);
        return;
      }
      push();
      for (size_t i = 0; i < e.params.size(); ++i) {
        if (e.params[i] != ast::kWildcard) bind(e.params[i], want.params[i]);
      }
      check(e.body(), want.ret.front(), "lambda body");
      pop();
      return;
    }
    MaybeType got = synth(e);
    if (got && !(*got == want)) mismatch(want, *got, what, e.loc);
  }

  void check_args(const Expr& call, const std::vector<SimpleType>& params,
                  const std::string& callee) {
    if (call.arity() != params.size()) {
      report("ArityMismatch",
             callee + " takes " + std::to_string(params.size()) +
                 " arguments, given " + std::to_string(call.arity()),
             call.loc);
      for (size_t i = 0; i < call.arity(); ++i) synth(call.arg(i));
      return;
    }
    for (size_t i = 0; i < params.size(); ++i) {
      check(call.arg(i), params[i],
            "argument " + std::to_string(i) + " of " + callee);
    }
  }

  MaybeType function_type(const ast::FunDef& fn) const {
    std::vector<SimpleType> ps;
    for (const auto& p : fn.params) ps.push_back(erase(*p.type));
    return SimpleType::fun(std::move(ps), erase(*fn.ret));
  }

  MaybeType synth(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Int: return SimpleType::integer();
      case Expr::Kind::Bool: return SimpleType::boolean();
      case Expr::Kind::Str: return SimpleType::string();
      case Expr::Kind::Var: {
        if (const MaybeType* t = lookup(e.name)) return *t;
        auto fn = functions_.find(e.name);
        if (fn != functions_.end()) return function_type(*fn->second);
        if (const interp::Builtin* b = builtins_.find(e.name)) {
          if (b->equality) {
            report("NotAFunctionValue",
                   "'" + e.name + "' is overloaded and must be applied",
                   e.loc);
            return std::nullopt;
          }
          return SimpleType::fun(b->params, b->ret);
        }
        return std::nullopt;  // reported by resolution
      }
      case Expr::Kind::Lambda:
        report("CannotInferLambda",
               "lambda parameter types cannot be inferred here", e.loc);
        return std::nullopt;
      case Expr::Kind::Apply:
        return synth_apply(e);
      case Expr::Kind::If: {
        check(*e.kids[0], SimpleType::boolean(), "if condition");
        MaybeType t = synth(*e.kids[1]);
        if (t) {
          check(*e.kids[2], *t, "else branch");
        } else {
          synth(*e.kids[2]);
        }
        return t;
      }
      case Expr::Kind::InLang:
        check(e.subject(), SimpleType::string(), "subject of 'in'");
        return SimpleType::boolean();
      case Expr::Kind::Select:
        check(e.subject(), SimpleType::string(), "subject of a selection");
        if (e.path.lang.empty()) {
          report("SubjectNotLanguageTyped",
                 "the subject of [" + e.path.str() +
                     "] must have a language type",
                 e.loc);
        }
        return SimpleType::string();
    }
    return std::nullopt;
  }

  MaybeType synth_apply(const Expr& e) {
    const Expr& callee = e.callee();
    if (callee.kind == Expr::Kind::Var && !lookup(callee.name)) {
      if (const interp::Builtin* b = builtins_.find(callee.name)) {
        if (!b->equality) {
          check_args(e, b->params, callee.name);
          return b->ret;
        }
        if (e.arity() != 2) {
          report("ArityMismatch", callee.name + " takes 2 arguments", e.loc);
          return b->ret;
        }
        MaybeType l = synth(e.arg(0));
        MaybeType r = synth(e.arg(1));
        if (l && l->is_fun()) {
          report("TypeMismatch", "functions cannot be compared", e.loc);
        } else if (l && r && !(*l == *r)) {
          report("TypeMismatch",
                 "cannot compare " + l->str() + " with " + r->str(), e.loc);
        }
        return b->ret;
      }
    }
    if (callee.kind == Expr::Kind::Lambda) {
      std::vector<MaybeType> args;
      for (size_t i = 0; i < e.arity(); ++i) args.push_back(synth(e.arg(i)));
      if (args.size() != callee.params.size()) {
        report("ArityMismatch",
               "lambda takes " + std::to_string(callee.params.size()) +
                   " arguments, given " + std::to_string(args.size()),
               e.loc);
        return std::nullopt;
      }
      push();
      for (size_t i = 0; i < args.size(); ++i) {
        if (callee.params[i] != ast::kWildcard) bind(callee.params[i], args[i]);
      }
      MaybeType t = synth(callee.body());
      pop();
      return t;
    }
    MaybeType f = synth(callee);
    if (!f) {
      for (size_t i = 0; i < e.arity(); ++i) synth(e.arg(i));
      return std::nullopt;
    }
    if (!f->is_fun()) {
      report("NotAFunction", "cannot apply a value of type " + f->str(), e.loc);
      return std::nullopt;
    }
    std::string name =
        callee.kind == Expr::Kind::Var ? callee.name : std::string("function");
    check_args(e, f->params, name);
    return f->ret.front();
  }

  // -- definitions ---------------------------------------------------------

  void function(const ast::FunDef& fn) {
    scopes_.clear();
    push();
    for (const auto& p : fn.params) {
      check_type(*p.type, p.loc, true);
      bind(p.name, erase(*p.type));
    }
    check_type(*fn.ret, fn.loc, true);
    check(*fn.body, erase(*fn.ret), "body of " + fn.name);
    pop();
  }

  void method(ast::MethodDef& m) {
    scopes_.clear();
    push();
    std::vector<SimpleType> sig;
    for (const auto& p : m.params) {
      check_type(*p.type, p.loc, false);
      bind(p.name, erase(*p.type));
      sig.push_back(erase(*p.type));
    }
    check_type(*m.ret, m.loc, false);
    current_ret_ = erase(*m.ret);

    std::string ret = front::return_binder(m);
    for (const auto& c : m.contracts) {
      bool post = c.kind == ast::Contract::Kind::Ensures;
      std::string what = post ? "ensures" : "requires";
      if (c.pred->kind == Expr::Kind::Lambda) {
        std::vector<SimpleType> ps = sig;
        if (post) ps.push_back(current_ret_);
        check(*c.pred, SimpleType::fun(ps, SimpleType::boolean()), what);
      } else {
        push();
        if (post) bind(ret, current_ret_);
        check(*c.pred, SimpleType::boolean(), what);
        pop();
      }
    }
    block(m.body);
    pop();
  }

  // -- statements ----------------------------------------------------------

  void block(std::vector<Stmt>& body) {
    for (auto& s : body) statement(s);
  }

  void nested(std::vector<Stmt>& body) {
    push();
    block(body);
    pop();
  }

  void statement(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Decl:
        check_type(*s.type, s.loc, false);
        bind(s.name, erase(*s.type));
        break;
      case Stmt::Kind::Assign: {
        const MaybeType* t = lookup(s.name);
        if (t && *t) {
          check(*s.expr, **t, "assignment to " + s.name);
        } else {
          synth(*s.expr);
        }
        break;
      }
      case Stmt::Kind::DeclAssign:
        if (s.type) {
          check_type(*s.type, s.loc, false);
          check(*s.expr, erase(*s.type), "initializer of " + s.name);
          bind(s.name, erase(*s.type));
        } else {
          MaybeType t = synth(*s.expr);
          if (s.inferred) {
            SimpleType declared = erase(*s.inferred);
            if (t && !(*t == declared)) {
              mismatch(declared, *t, "initializer of " + s.name, s.loc);
            }
            t = declared;
          } else if (t) {
            if (t->is_fun()) {
              report("FunctionTypeNotAllowed",
                     "locals cannot hold functions", s.loc);
            }
            s.inferred = Type::of(*t, s.loc);
          }
          bind(s.name, t);
        }
        break;
      case Stmt::Kind::Call: {
        auto it = methods_.find(s.method);
        if (it == methods_.end()) break;  // reported by resolution
        const ast::MethodDef& callee = *it->second;
        if (s.args.size() != callee.params.size()) {
          report("ArityMismatch",
                 "method " + s.method + " takes " +
                     std::to_string(callee.params.size()) +
                     " arguments, given " + std::to_string(s.args.size()),
                 s.loc);
          for (const auto& a : s.args) synth(*a);
        } else {
          for (size_t i = 0; i < s.args.size(); ++i) {
            check(*s.args[i], erase(*callee.params[i].type),
                  "argument " + std::to_string(i) + " of method " + s.method);
          }
        }
        bind(s.name, erase(*callee.ret));
        break;
      }
      case Stmt::Kind::Assert:
        check(*s.expr, SimpleType::boolean(), "assertion");
        break;
      case Stmt::Kind::Return:
        check(*s.expr, current_ret_, "return value");
        break;
      case Stmt::Kind::If:
        check(*s.expr, SimpleType::boolean(), "if condition");
        nested(s.body);
        nested(s.orelse);
        break;
      case Stmt::Kind::While:
        check(*s.expr, SimpleType::boolean(), "while condition");
        nested(s.body);
        break;
    }
  }

  front::ResolvedProgram& rp_;
  const interp::Builtins& builtins_;
  std::map<std::string, const ast::FunDef*> functions_;
  std::map<std::string, const ast::MethodDef*> methods_;
  std::vector<std::map<std::string, MaybeType>> scopes_;
  SimpleType current_ret_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> simple_typecheck(front::ResolvedProgram& program,
                                         const interp::Builtins& builtins) {
  return Checker(program, builtins).run();
}

}  // namespace flat::typecheck
