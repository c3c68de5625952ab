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

#include "flatcore/ast.hpp"

#include <map>

namespace flat::ast {

namespace {

std::shared_ptr<Expr> make(Expr::Kind kind, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = std::move(loc);
  return e;
}

}  // namespace

ExprPtr Expr::int_lit(BigInt v, SourceLoc loc) {
  auto e = make(Kind::Int, std::move(loc));
  e->int_value = std::move(v);
  return e;
}

ExprPtr Expr::bool_lit(bool v, SourceLoc loc) {
  auto e = make(Kind::Bool, std::move(loc));
  e->bool_value = v;
  return e;
}

ExprPtr Expr::str_lit(Text v, SourceLoc loc) {
  auto e = make(Kind::Str, std::move(loc));
  e->str_value = std::move(v);
  return e;
}

ExprPtr Expr::var(std::string name, SourceLoc loc) {
  auto e = make(Kind::Var, std::move(loc));
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::apply(ExprPtr callee, std::vector<ExprPtr> args, SourceLoc loc) {
  auto e = make(Kind::Apply, std::move(loc));
  e->kids.push_back(std::move(callee));
  for (auto& a : args) e->kids.push_back(std::move(a));
  return e;
}

ExprPtr Expr::call(const std::string& builtin, std::vector<ExprPtr> args,
                   SourceLoc loc) {
  return apply(var(builtin, loc), std::move(args), loc);
}

ExprPtr Expr::lambda(std::vector<std::string> params, ExprPtr body,
                     SourceLoc loc) {
  auto e = make(Kind::Lambda, std::move(loc));
  e->params = std::move(params);
  e->kids.push_back(std::move(body));
  return e;
}

ExprPtr Expr::if_then_else(ExprPtr c, ExprPtr t, ExprPtr f, SourceLoc loc) {
  auto e = make(Kind::If, std::move(loc));
  e->kids = {std::move(c), std::move(t), std::move(f)};
  return e;
}

ExprPtr Expr::in_lang(ExprPtr subject, std::string lang, SourceLoc loc) {
  auto e = make(Kind::InLang, std::move(loc));
  e->name = std::move(lang);
  e->kids.push_back(std::move(subject));
  return e;
}

ExprPtr Expr::select(ExprPtr subject, xpath::XPath path, SourceLoc loc) {
  auto e = make(Kind::Select, std::move(loc));
  e->path = std::move(path);
  e->kids.push_back(std::move(subject));
  return e;
}

bool Expr::is_call_to(std::string_view builtin) const {
  return kind == Kind::Apply && callee().kind == Kind::Var &&
         callee().name == builtin;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Int:
      return a.int_value == b.int_value;
    case Expr::Kind::Bool:
      return a.bool_value == b.bool_value;
    case Expr::Kind::Str:
      return a.str_value == b.str_value;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Lambda:
      if (a.params != b.params) return false;
      break;
    case Expr::Kind::InLang:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::Select:
      if (a.path.selectors != b.path.selectors) return false;
      break;
    default:
      break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i) {
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

namespace {

void collect_free(const Expr& e, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Var:
      if (!bound.count(e.name)) out.insert(e.name);
      return;
    case Expr::Kind::Lambda: {
      std::set<std::string> inner = bound;
      inner.insert(e.params.begin(), e.params.end());
      collect_free(e.body(), inner, out);
      return;
    }
    default:
      for (const auto& k : e.kids) collect_free(*k, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken) {
  std::string stem = base == kWildcard ? "v" : base;
  if (!taken.count(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

ExprPtr substitute(const ExprPtr& e, const std::string& var,
                   const ExprPtr& replacement) {
  switch (e->kind) {
    case Expr::Kind::Var:
      return e->name == var ? replacement : e;
    case Expr::Kind::Int:
    case Expr::Kind::Bool:
    case Expr::Kind::Str:
      return e;
    case Expr::Kind::Lambda: {
      for (const auto& p : e->params) {
        if (p == var) return e;
      }
      std::set<std::string> repl_free = free_vars(*replacement);
      std::vector<std::string> params = e->params;
      ExprPtr body = e->kids[0];
      for (auto& p : params) {
        if (!repl_free.count(p)) continue;
        std::set<std::string> taken = repl_free;
        auto body_free = free_vars(*body);
        taken.insert(body_free.begin(), body_free.end());
        taken.insert(params.begin(), params.end());
        taken.insert(var);
        std::string renamed = fresh_name(p, taken);
        body = substitute(body, p, Expr::var(renamed));
        p = renamed;
      }
      return Expr::lambda(std::move(params), substitute(body, var, replacement),
                          e->loc);
    }
    default: {
      auto copy = std::make_shared<Expr>(*e);
      for (auto& k : copy->kids) k = substitute(k, var, replacement);
      return copy;
    }
  }
}

std::vector<ExprPtr> conjuncts(const ExprPtr& e) {
  if (e->is_call_to("and") && e->arity() == 2) {
    auto left = conjuncts(e->kids[1]);
    auto right = conjuncts(e->kids[2]);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
  return {e};
}

ExprPtr conjoin(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) return Expr::bool_lit(true);
  ExprPtr acc = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) {
    acc = Expr::call("and", {acc, parts[i]});
  }
  return acc;
}

std::string SimpleType::str() const {
  switch (kind) {
    case Kind::Int: return "Int";
    case Kind::Bool: return "Bool";
    case Kind::String: return "String";
    case Kind::Fun: {
      std::string out = "(";
      for (size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i].str();
      }
      return out + ") -> " + ret.front().str();
    }
  }
  return "?";
}

TypePtr Type::of(SimpleType t, SourceLoc loc) {
  auto out = std::make_shared<Type>();
  out->kind = Kind::Simple;
  out->simple = std::move(t);
  out->loc = std::move(loc);
  return out;
}

TypePtr Type::lang(std::string name, SourceLoc loc) {
  auto out = std::make_shared<Type>();
  out->kind = Kind::Lang;
  out->name = std::move(name);
  out->loc = std::move(loc);
  return out;
}

TypePtr Type::refine(std::string var, TypePtr base, ExprPtr pred,
                     SourceLoc loc) {
  auto out = std::make_shared<Type>();
  out->kind = Kind::Refine;
  out->var = std::move(var);
  out->base = std::move(base);
  out->pred = std::move(pred);
  out->loc = std::move(loc);
  return out;
}

std::string Type::language() const {
  switch (kind) {
    case Kind::Lang: return name;
    case Kind::Refine: return base->language();
    default: return "";
  }
}

bool equal(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Type::Kind::Simple: return a.simple == b.simple;
    case Type::Kind::Lang: return a.name == b.name;
    case Type::Kind::Refine:
      return a.var == b.var && equal(*a.base, *b.base) &&
             equal(*a.pred, *b.pred);
  }
  return false;
}

const char* check_kind_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::ArgType: return "ArgType";
    case CheckKind::ReturnType: return "ReturnType";
    case CheckKind::Pre: return "Pre";
    case CheckKind::Post: return "Post";
    case CheckKind::LocalType: return "LocalType";
    case CheckKind::UserAssert: return "UserAssert";
  }
  return "?";
}

const MethodDef* Program::method(std::string_view name) const {
  for (const auto& d : defs) {
    if (auto* m = std::get_if<MethodDef>(&d); m && m->name == name) return m;
  }
  return nullptr;
}

const FunDef* Program::function(std::string_view name) const {
  for (const auto& d : defs) {
    if (auto* f = std::get_if<FunDef>(&d); f && f->name == name) return f;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct OpInfo {
  const char* symbol;
  int prec;
  int arity;
};

// Precedence levels: 0 lambda/if, 1 or, 2 and, 3 not, 4 comparison and
// membership, 5 additive, 6 multiplicative, 7 unary minus, 8 postfix,
// 9 atoms.
const std::map<std::string, OpInfo>& operators() {
  static const std::map<std::string, OpInfo> table = {
      {"or", {"or", 1, 2}},   {"and", {"and", 2, 2}}, {"not", {"not", 3, 1}},
      {"eq", {"==", 4, 2}},   {"ne", {"!=", 4, 2}},   {"lt", {"<", 4, 2}},
      {"le", {"<=", 4, 2}},   {"gt", {">", 4, 2}},    {"ge", {">=", 4, 2}},
      {"add", {"+", 5, 2}},   {"sub", {"-", 5, 2}},   {"mul", {"*", 6, 2}},
      {"div", {"/", 6, 2}},   {"mod", {"%", 6, 2}},   {"neg", {"-", 7, 1}},
  };
  return table;
}

std::string print_prec(const Expr& e, int min_prec);

std::string wrap(std::string text, int prec, int min_prec) {
  return prec < min_prec ? "(" + text + ")" : text;
}

std::string print_args(const Expr& e) {
  std::string out = "(";
  for (size_t i = 0; i < e.arity(); ++i) {
    if (i) out += ", ";
    out += print_prec(e.arg(i), 0);
  }
  return out + ")";
}

std::string print_prec(const Expr& e, int min_prec) {
  switch (e.kind) {
    case Expr::Kind::Int:
      if (e.int_value < 0) return wrap(e.int_value.str(), 7, min_prec);
      return e.int_value.str();
    case Expr::Kind::Bool:
      return e.bool_value ? "true" : "false";
    case Expr::Kind::Str:
      return quote(e.str_value);
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Lambda: {
      std::string out = "(";
      for (size_t i = 0; i < e.params.size(); ++i) {
        if (i) out += ", ";
        out += e.params[i];
      }
      out += ") -> " + print_prec(e.body(), 0);
      return wrap(out, 0, min_prec);
    }
    case Expr::Kind::If:
      return wrap("if " + print_prec(*e.kids[0], 0) + " then " +
                      print_prec(*e.kids[1], 0) + " else " +
                      print_prec(*e.kids[2], 0),
                  0, min_prec);
    case Expr::Kind::InLang:
      return wrap(print_prec(e.subject(), 5) + " in " + e.name, 4, min_prec);
    case Expr::Kind::Select:
      return wrap(print_prec(e.subject(), 8) + "[" + e.path.str() + "]", 8,
                  min_prec);
    case Expr::Kind::Apply: {
      if (e.callee().kind == Expr::Kind::Var) {
        auto it = operators().find(e.callee().name);
        if (it != operators().end() &&
            static_cast<int>(e.arity()) == it->second.arity) {
          const OpInfo& op = it->second;
          if (op.arity == 1) {
            const Expr& operand = e.arg(0);
            if (e.callee().name == "neg") {
              // `-5` would reparse as a negative literal.
              std::string inner = operand.kind == Expr::Kind::Int
                                      ? "(" + print_prec(operand, 0) + ")"
                                      : print_prec(operand, 7);
              return wrap("-" + inner, 7, min_prec);
            }
            return wrap(std::string(op.symbol) + " " + print_prec(operand, 3),
                        3, min_prec);
          }
          bool non_assoc = op.prec == 4;
          std::string lhs = print_prec(e.arg(0), non_assoc ? op.prec + 1 : op.prec);
          std::string rhs = print_prec(e.arg(1), op.prec + 1);
          return wrap(lhs + " " + op.symbol + " " + rhs, op.prec, min_prec);
        }
        return e.callee().name + print_args(e);
      }
      return wrap(print_prec(e.callee(), 8) + print_args(e), 8, min_prec);
    }
  }
  return "?";
}

std::string indent_str(int indent) { return std::string(indent * 2, ' '); }

void print_stmt(const Stmt& s, int indent, std::string& out) {
  std::string pad = indent_str(indent);
  switch (s.kind) {
    case Stmt::Kind::Decl:
      out += pad + "var " + s.name + ": " + print_type(*s.type) + ";\n";
      break;
    case Stmt::Kind::Assign:
      out += pad + s.name + " = " + print_expr(*s.expr) + ";\n";
      break;
    case Stmt::Kind::DeclAssign:
      out += pad + "var " + s.name;
      if (s.type) out += ": " + print_type(*s.type);
      out += " = " + print_expr(*s.expr) + ";\n";
      break;
    case Stmt::Kind::Call: {
      out += pad + "var " + s.name + " = call " + s.method + "(";
      for (size_t i = 0; i < s.args.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(*s.args[i]);
      }
      out += ");\n";
      break;
    }
    case Stmt::Kind::Assert:
      out += pad + "assert " + print_expr(*s.expr) + ";";
      if (s.check && s.check->kind != CheckKind::UserAssert) {
        out += "  # ";
        out += check_kind_name(s.check->kind);
        if (s.check->arg_index >= 0) {
          out += " " + std::to_string(s.check->arg_index);
        }
        out += ": " + s.check->expected;
      }
      out += "\n";
      break;
    case Stmt::Kind::Return:
      out += pad + "return " + print_expr(*s.expr) + ";\n";
      break;
    case Stmt::Kind::If:
      out += pad + "if " + print_expr(*s.expr) + " {\n";
      for (const auto& b : s.body) print_stmt(b, indent + 1, out);
      out += pad + "}";
      if (!s.orelse.empty()) {
        out += " else {\n";
        for (const auto& b : s.orelse) print_stmt(b, indent + 1, out);
        out += pad + "}";
      }
      out += "\n";
      break;
    case Stmt::Kind::While:
      out += pad + "while " + print_expr(*s.expr) + " {\n";
      for (const auto& b : s.body) print_stmt(b, indent + 1, out);
      out += pad + "}\n";
      break;
  }
}

std::string print_params(const std::vector<Param>& params) {
  std::string out = "(";
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name + ": " + print_type(*params[i].type);
  }
  return out + ")";
}

}  // namespace

std::string print_expr(const Expr& e) { return print_prec(e, 0); }

std::string print_type(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Simple:
      return t.simple.str();
    case Type::Kind::Lang:
      return t.name;
    case Type::Kind::Refine: {
      std::string out = "{";
      if (!t.var.empty()) out += t.var + ": ";
      return out + print_type(*t.base) + " | " + print_expr(*t.pred) + "}";
    }
  }
  return "?";
}

std::string print_stmts(const std::vector<Stmt>& body, int indent) {
  std::string out;
  for (const auto& s : body) print_stmt(s, indent, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const auto& def : p.defs) {
    if (!out.empty()) out += "\n";
    if (auto* lang = std::get_if<LangDef>(&def)) {
      out += "lang " + lang->name + " = {\n";
      std::string rules = lang->grammar ? grammar::print_grammar(*lang->grammar)
                                        : lang->source + "\n";
      size_t begin = 0;
      while (begin < rules.size()) {
        size_t end = rules.find('\n', begin);
        if (end == std::string::npos) end = rules.size();
        if (end > begin) out += "  " + rules.substr(begin, end - begin) + "\n";
        begin = end + 1;
      }
      out += "}\n";
    } else if (auto* fn = std::get_if<FunDef>(&def)) {
      out += "def " + fn->name + print_params(fn->params) + ": " +
             print_type(*fn->ret) + " = " + print_expr(*fn->body) + "\n";
    } else if (auto* m = std::get_if<MethodDef>(&def)) {
      out += "method " + m->name + print_params(m->params) + ": " +
             print_type(*m->ret) + "\n";
      for (const auto& c : m->contracts) {
        out += c.kind == Contract::Kind::Requires ? "  requires " : "  ensures ";
        out += print_expr(*c.pred) + "\n";
      }
      out += "{\n" + print_stmts(m->body, 1) + "}\n";
    }
  }
  return out;
}

}  // namespace flat::ast
