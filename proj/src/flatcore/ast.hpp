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

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flatcore/common.hpp"
#include "flatcore/grammar.hpp"
#include "flatcore/xpath.hpp"

namespace flat::ast {

using BigInt = boost::multiprecision::cpp_int;

// Bound variable of a refinement whose predicate does not use it.
inline constexpr const char* kWildcard = "_";

// Prefix of names minted by the instrumenter; never valid in user code.
inline constexpr char kReservedPrefix = '$';

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Int, Bool, Str, Var, Apply, Lambda, If, InLang, Select };

  Kind kind = Kind::Bool;
  SourceLoc loc;
  BigInt int_value;
  bool bool_value = false;
  Text str_value;
  std::string name;                 // Var: identifier; InLang: language
  std::vector<std::string> params;  // Lambda
  std::vector<ExprPtr> kids;        // Apply: callee, args...; Lambda: body;
                                    // If: cond, then, else; InLang/Select:
                                    // subject
  xpath::XPath path;                // Select

  const Expr& callee() const { return *kids[0]; }
  size_t arity() const { return kids.size() - 1; }
  const Expr& arg(size_t i) const { return *kids[i + 1]; }
  const Expr& body() const { return *kids[0]; }
  const Expr& subject() const { return *kids[0]; }

  static ExprPtr int_lit(BigInt v, SourceLoc loc = {});
  static ExprPtr bool_lit(bool v, SourceLoc loc = {});
  static ExprPtr str_lit(Text v, SourceLoc loc = {});
  static ExprPtr var(std::string name, SourceLoc loc = {});
  static ExprPtr apply(ExprPtr callee, std::vector<ExprPtr> args,
                       SourceLoc loc = {});
  // Application of the named builtin (operators desugar to these).
  static ExprPtr call(const std::string& builtin, std::vector<ExprPtr> args,
                      SourceLoc loc = {});
  static ExprPtr lambda(std::vector<std::string> params, ExprPtr body,
                        SourceLoc loc = {});
  static ExprPtr if_then_else(ExprPtr c, ExprPtr t, ExprPtr e,
                              SourceLoc loc = {});
  static ExprPtr in_lang(ExprPtr subject, std::string lang,
                         SourceLoc loc = {});
  static ExprPtr select(ExprPtr subject, xpath::XPath path,
                        SourceLoc loc = {});

  // Whether this is an application of builtin `name` (by callee name).
  bool is_call_to(std::string_view builtin) const;
};

// Structural equality ignoring source locations.
bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

std::set<std::string> free_vars(const Expr& e);

// Capture-avoiding substitution of `replacement` for free `var`.
ExprPtr substitute(const ExprPtr& e, const std::string& var,
                   const ExprPtr& replacement);

// Flattened conjuncts of nested `and` applications.
std::vector<ExprPtr> conjuncts(const ExprPtr& e);
// Left-nested `and` of `parts`; `true` when empty.
ExprPtr conjoin(const std::vector<ExprPtr>& parts);

// Fresh identifier derived from `base` avoiding every name in `taken`.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken);

struct SimpleType {
  enum class Kind { Int, Bool, String, Fun };

  Kind kind = Kind::Int;
  std::vector<SimpleType> params;  // Fun
  std::vector<SimpleType> ret;     // Fun: exactly one element

  static SimpleType integer() { return {Kind::Int, {}, {}}; }
  static SimpleType boolean() { return {Kind::Bool, {}, {}}; }
  static SimpleType string() { return {Kind::String, {}, {}}; }
  static SimpleType fun(std::vector<SimpleType> params, SimpleType ret) {
    return {Kind::Fun, std::move(params), {std::move(ret)}};
  }

  bool is_fun() const { return kind == Kind::Fun; }
  bool operator==(const SimpleType&) const = default;
  std::string str() const;
};

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Simple, Lang, Refine };

  Kind kind = Kind::Simple;
  SourceLoc loc;
  SimpleType simple;
  std::string name;  // Lang
  std::string var;   // Refine binder; empty means "inherit the base binder"
  TypePtr base;      // Refine
  ExprPtr pred;      // Refine

  static TypePtr of(SimpleType t, SourceLoc loc = {});
  static TypePtr lang(std::string name, SourceLoc loc = {});
  static TypePtr refine(std::string var, TypePtr base, ExprPtr pred,
                        SourceLoc loc = {});

  // Language type reached through any refinement layers, or "".
  std::string language() const;
};

bool equal(const Type& a, const Type& b);

enum class CheckKind { ArgType, ReturnType, Pre, Post, LocalType, UserAssert };
const char* check_kind_name(CheckKind kind);

// Attached to assertions the instrumenter emits.
struct CheckInfo {
  CheckKind kind = CheckKind::UserAssert;
  std::string method;    // method whose call/return/body is checked
  std::string expected;  // type or contract text
  std::string subject;   // variable holding the offending value, if any
  int arg_index = -1;
  SourceLoc origin;      // location in the original program
};

struct Stmt {
  enum class Kind { Decl, Assign, DeclAssign, Call, Assert, Return, If, While };

  Kind kind = Kind::Assert;
  SourceLoc loc;
  std::string name;           // Decl/Assign/DeclAssign target, Call binder
  TypePtr type;               // Decl, DeclAssign (null when inferred)
  TypePtr inferred;           // DeclAssign without annotation, after resolve
  ExprPtr expr;               // Assign/DeclAssign/Assert/Return/If/While
  std::string method;         // Call
  std::vector<ExprPtr> args;  // Call
  std::vector<Stmt> body;     // If-then, While
  std::vector<Stmt> orelse;   // If-else
  std::optional<CheckInfo> check;  // synthesized assertions
  bool synthesized = false;        // emitted by the instrumenter

  // Declared or inferred type of the bound variable.
  TypePtr bound_type() const { return type ? type : inferred; }
};

struct Param {
  std::string name;
  TypePtr type;
  SourceLoc loc;
};

struct Contract {
  enum class Kind { Requires, Ensures };
  Kind kind = Kind::Requires;
  ExprPtr pred;
  SourceLoc loc;
};

struct FunDef {
  std::string name;
  std::vector<Param> params;
  TypePtr ret;
  ExprPtr body;
  SourceLoc loc;
};

struct MethodDef {
  std::string name;
  std::vector<Param> params;
  TypePtr ret;
  std::vector<Contract> contracts;
  std::vector<Stmt> body;
  SourceLoc loc;
};

struct LangDef {
  std::string name;
  std::string source;  // rule block text
  std::shared_ptr<const grammar::Grammar> grammar;
  SourceLoc loc;
};

using Def = std::variant<FunDef, MethodDef, LangDef>;

struct Program {
  std::vector<Def> defs;

  const MethodDef* method(std::string_view name) const;
  const FunDef* function(std::string_view name) const;
};

// Signature and contracts of a method. `pre` is a lambda over the
// parameters, `post` a lambda over the parameters plus the return binder;
// both are conjunctions of every requires/ensures clause.
struct MethodMeta {
  std::string name;
  std::vector<Param> params;
  TypePtr ret;
  ExprPtr pre;
  ExprPtr post;
  std::string pre_text;
  std::string post_text;
  SourceLoc loc;
};

std::string print_expr(const Expr& e);
std::string print_type(const Type& t);
std::string print_stmts(const std::vector<Stmt>& body, int indent = 0);
std::string print_program(const Program& p);

}  // namespace flat::ast
