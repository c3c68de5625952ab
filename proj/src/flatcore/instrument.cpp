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

#include "flatcore/instrument.hpp"

#include "flatcore/typecheck.hpp"
#include "flatcore/types.hpp"

namespace flat::instrument {

using ast::CheckInfo;
using ast::CheckKind;
using ast::Expr;
using ast::ExprPtr;
using ast::Stmt;
using ast::TypePtr;

FreshNamer::FreshNamer(std::set<std::string> taken)
    : taken_(std::move(taken)) {}

std::string FreshNamer::next() {
  std::string name;
  do {
    name = std::string(1, ast::kReservedPrefix) + "z" +
           std::to_string(++counter_);
  } while (taken_.count(name));
  taken_.insert(name);
  return name;
}

TypingContext::TypingContext() { push(); }
void TypingContext::push() { scopes_.emplace_back(); }
void TypingContext::pop() { scopes_.pop_back(); }

void TypingContext::bind(const std::string& name, TypePtr type) {
  scopes_.back()[name] = std::move(type);
}

TypePtr TypingContext::lookup(const std::string& name) const {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(name);
    if (found != it->end()) return found->second;
  }
  return nullptr;
}

namespace {

bool is_reserved(const std::string& name) {
  return !name.empty() && name[0] == ast::kReservedPrefix;
}

bool is_reserved_var(const Expr& e) {
  return e.kind == Expr::Kind::Var && is_reserved(e.name);
}

void collect_names(const std::vector<Stmt>& body, std::set<std::string>& out) {
  for (const auto& s : body) {
    if (!s.name.empty()) out.insert(s.name);
    if (s.expr) {
      for (const auto& v : ast::free_vars(*s.expr)) out.insert(v);
    }
    for (const auto& a : s.args) {
      for (const auto& v : ast::free_vars(*a)) out.insert(v);
    }
    collect_names(s.body, out);
    collect_names(s.orelse, out);
  }
}

Stmt synthesized(Stmt::Kind kind, const SourceLoc& loc) {
  Stmt s;
  s.kind = kind;
  s.loc = loc;
  s.synthesized = true;
  return s;
}

class Instrumenter {
 public:
  Instrumenter(TypingContext& ctx, const ast::MethodMeta& m,
               const std::map<std::string, ast::MethodMeta>& meta,
               FreshNamer& namer)
      : ctx_(ctx), m_(m), meta_(meta), namer_(namer) {}

  std::vector<Stmt> block(const std::vector<Stmt>& body) {
    std::vector<Stmt> out;
    for (size_t i = 0; i < body.size(); ++i) {
      const Stmt* next = i + 1 < body.size() ? &body[i + 1] : nullptr;
      if (statement(body[i], next, out)) break;  // statements after return
    }
    return out;
  }

 private:
  // Appends the check `pred` with its payload unless it is trivially true.
  bool emit_check(ExprPtr pred, CheckInfo info, const SourceLoc& loc,
                  std::vector<Stmt>& out) {
    if (types::is_trivially_true(*pred)) return false;
    Stmt a = synthesized(Stmt::Kind::Assert, loc);
    a.expr = std::move(pred);
    a.check = std::move(info);
    out.push_back(std::move(a));
    return true;
  }

  static CheckInfo info(CheckKind kind, const std::string& method,
                        std::string expected, std::string subject,
                        int arg_index, const SourceLoc& origin) {
    return {kind, method, std::move(expected), std::move(subject), arg_index,
            origin};
  }

  ExprPtr type_check(const ast::Type& t, const std::string& var) {
    return types::check_assertion(t, Expr::var(var));
  }

  static bool has_check(const ast::Type& t) {
    return !types::is_trivially_true(*types::normalize(t).pred);
  }

  static ExprPtr applied(const ExprPtr& lambda,
                         const std::vector<std::string>& args,
                         const SourceLoc& loc) {
    std::vector<ExprPtr> vars;
    for (const auto& a : args) vars.push_back(Expr::var(a, loc));
    return Expr::apply(lambda, std::move(vars), loc);
  }

  // Check of `name` after an assignment, unless `next` already is that
  // check (re-instrumentation).
  void assigned(const std::string& name, const ast::Type& t,
                const SourceLoc& loc, const Stmt* next,
                std::vector<Stmt>& out) {
    ExprPtr pred = type_check(t, name);
    if (next && next->kind == Stmt::Kind::Assert &&
        ast::equal(*next->expr, *pred)) {
      return;
    }
    emit_check(pred,
               info(CheckKind::LocalType, m_.name, ast::print_type(t), name, -1,
                    loc),
               loc, out);
  }

  // Returns true when control cannot reach the following statements.
  bool statement(const Stmt& s, const Stmt* next, std::vector<Stmt>& out) {
    switch (s.kind) {
      case Stmt::Kind::Decl:
        ctx_.bind(s.name, s.type);
        out.push_back(s);
        return false;

      case Stmt::Kind::Assign: {
        out.push_back(s);
        TypePtr t = ctx_.lookup(s.name);
        if (!is_reserved(s.name) && t && has_check(*t)) {
          assigned(s.name, *t, s.loc, next, out);
        }
        return false;
      }

      case Stmt::Kind::DeclAssign: {
        TypePtr t = s.bound_type();
        ctx_.bind(s.name, t);
        if (is_reserved(s.name) || !t || !has_check(*t)) {
          out.push_back(s);
          return false;
        }
        Stmt d = synthesized(Stmt::Kind::Decl, s.loc);
        d.name = s.name;
        d.type = t;
        out.push_back(std::move(d));
        Stmt a = synthesized(Stmt::Kind::Assign, s.loc);
        a.name = s.name;
        a.expr = s.expr;
        out.push_back(std::move(a));
        assigned(s.name, *t, s.loc, nullptr, out);
        return false;
      }

      case Stmt::Kind::Call:
        call(s, out);
        return false;

      case Stmt::Kind::Assert:
        out.push_back(s);
        return false;

      case Stmt::Kind::Return:
        ret(s, out);
        return true;

      case Stmt::Kind::If: {
        Stmt copy = s;
        ctx_.push();
        copy.body = block(s.body);
        ctx_.pop();
        ctx_.push();
        copy.orelse = block(s.orelse);
        ctx_.pop();
        out.push_back(std::move(copy));
        return false;
      }

      case Stmt::Kind::While: {
        Stmt copy = s;
        ctx_.push();
        copy.body = block(s.body);
        ctx_.pop();
        out.push_back(std::move(copy));
        return false;
      }
    }
    return false;
  }

  void call(const Stmt& s, std::vector<Stmt>& out) {
    const ast::MethodMeta& callee = meta_.at(s.method);
    ctx_.bind(s.name, callee.ret);

    bool all_reserved = !s.args.empty();
    for (const auto& a : s.args) all_reserved = all_reserved && is_reserved_var(*a);
    bool needed = !types::is_trivially_true(callee.pre->body());
    for (const auto& p : callee.params) needed = needed || has_check(*p.type);
    if (all_reserved || !needed) {
      out.push_back(s);
      return;
    }

    std::vector<std::string> zs;
    for (size_t i = 0; i < s.args.size(); ++i) {
      const ast::Param& p = callee.params[i];
      std::string z = namer_.next();
      zs.push_back(z);
      Stmt d = synthesized(Stmt::Kind::DeclAssign, s.loc);
      d.name = z;
      d.expr = s.args[i];
      d.inferred = ast::Type::of(typecheck::erase(*p.type), s.loc);
      out.push_back(std::move(d));
      ctx_.bind(z, p.type);
      emit_check(type_check(*p.type, z),
                 info(CheckKind::ArgType, callee.name, ast::print_type(*p.type),
                      z, static_cast<int>(i), s.loc),
                 s.loc, out);
    }
    emit_check(applied(callee.pre, zs, s.loc),
               info(CheckKind::Pre, callee.name, callee.pre_text, "", -1, s.loc),
               s.loc, out);
    Stmt c = synthesized(Stmt::Kind::Call, s.loc);
    c.name = s.name;
    c.method = s.method;
    for (const auto& z : zs) c.args.push_back(Expr::var(z, s.loc));
    out.push_back(std::move(c));
  }

  void ret(const Stmt& s, std::vector<Stmt>& out) {
    bool needed = has_check(*m_.ret) ||
                  !types::is_trivially_true(m_.post->body());
    if (is_reserved_var(*s.expr) || !needed) {
      out.push_back(s);
      return;
    }
    std::string z = namer_.next();
    Stmt d = synthesized(Stmt::Kind::DeclAssign, s.loc);
    d.name = z;
    d.expr = s.expr;
    d.inferred = ast::Type::of(typecheck::erase(*m_.ret), s.loc);
    out.push_back(std::move(d));
    ctx_.bind(z, m_.ret);
    emit_check(type_check(*m_.ret, z),
               info(CheckKind::ReturnType, m_.name, ast::print_type(*m_.ret), z,
                    -1, s.loc),
               s.loc, out);
    std::vector<std::string> args;
    for (const auto& p : m_.params) args.push_back(p.name);
    args.push_back(z);
    emit_check(applied(m_.post, args, s.loc),
               info(CheckKind::Post, m_.name, m_.post_text, z, -1, s.loc),
               s.loc, out);
    Stmt r = synthesized(Stmt::Kind::Return, s.loc);
    r.expr = Expr::var(z, s.loc);
    out.push_back(std::move(r));
  }

  TypingContext& ctx_;
  const ast::MethodMeta& m_;
  const std::map<std::string, ast::MethodMeta>& meta_;
  FreshNamer& namer_;
};

}  // namespace

std::vector<Stmt> instrument_body(
    TypingContext& ctx, const ast::MethodMeta& m, const std::vector<Stmt>& body,
    const std::map<std::string, ast::MethodMeta>& meta) {
  std::set<std::string> taken;
  for (const auto& p : m.params) taken.insert(p.name);
  collect_names(body, taken);
  FreshNamer namer(std::move(taken));
  return Instrumenter(ctx, m, meta, namer).block(body);
}

front::ResolvedProgram instrument_program(const front::ResolvedProgram& p) {
  front::ResolvedProgram out = p;
  for (auto& def : out.program.defs) {
    auto* m = std::get_if<ast::MethodDef>(&def);
    if (!m) continue;
    const ast::MethodMeta& meta = p.meta.at(m->name);
    TypingContext ctx;
    for (const auto& param : m->params) ctx.bind(param.name, param.type);
    m->body = instrument_body(ctx, meta, m->body, p.meta);
    m->contracts.clear();
  }
  return out;
}

}  // namespace flat::instrument
