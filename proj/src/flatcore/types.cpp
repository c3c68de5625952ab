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

#include "flatcore/types.hpp"

namespace flat::types {

using ast::Expr;
using ast::ExprPtr;
using ast::kWildcard;
using ast::Type;

std::string NormalizedType::str() const {
  return "{" + var + ": " + base.str() + " | " + ast::print_expr(*pred) + "}";
}

namespace {

bool is_true(const ExprPtr& e) {
  return e->kind == Expr::Kind::Bool && e->bool_value;
}

std::set<std::string> union_of(std::set<std::string> a,
                               const std::set<std::string>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace

std::string effective_binder(const Type& t) {
  const Type* cur = &t;
  while (cur->kind == Type::Kind::Refine) {
    if (!cur->var.empty()) return cur->var;
    cur = cur->base.get();
  }
  return cur->kind == Type::Kind::Lang ? kLangBinder : kWildcard;
}

NormalizedType normalize(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Simple:
      return {kWildcard, t.simple, Expr::bool_lit(true)};
    case Type::Kind::Lang:
      return {kLangBinder, ast::SimpleType::string(),
              Expr::in_lang(Expr::var(kLangBinder), t.name)};
    case Type::Kind::Refine:
      break;
  }

  NormalizedType inner = normalize(*t.base);
  const std::string& y = inner.var;
  std::string x = effective_binder(t);
  ExprPtr e = t.pred;
  ExprPtr e1 = inner.pred;

  if (x == kWildcard && y != kWildcard) {
    // The outer predicate ignores the value; reuse the inner binder unless
    // that would capture a free variable of the outer predicate.
    auto fv = ast::free_vars(*e);
    x = fv.count(y) ? ast::fresh_name(y, union_of(fv, ast::free_vars(*e1))) : y;
  }
  if (x != y) {
    auto fv1 = ast::free_vars(*e1);
    fv1.erase(y);
    if (fv1.count(x)) {
      auto taken = union_of(fv1, ast::free_vars(*e));
      taken.insert(y);
      std::string renamed = ast::fresh_name(x, taken);
      e = ast::substitute(e, x, Expr::var(renamed));
      x = renamed;
    }
    if (y != kWildcard) e1 = ast::substitute(e1, y, Expr::var(x));
  }

  std::vector<ExprPtr> parts;
  for (const auto& source : {e1, e}) {
    for (auto& c : ast::conjuncts(source)) {
      if (!is_true(c)) parts.push_back(c);
    }
  }
  return {x, inner.base, ast::conjoin(parts)};
}

namespace {

void check_langs(const Type& t, const grammar::Registry& registry) {
  if (t.kind == Type::Kind::Lang) registry.at(t.name);
  if (t.kind == Type::Kind::Refine) check_langs(*t.base, registry);
}

}  // namespace

NormalizedType normalize(const Type& t, const grammar::Registry& registry) {
  check_langs(t, registry);
  return normalize(t);
}

ast::TypePtr embed(const NormalizedType& n) {
  return Type::refine(n.var, Type::of(n.base), n.pred);
}

ExprPtr check_predicate(const Type& t) {
  NormalizedType n = normalize(t);
  return Expr::lambda({n.var}, n.pred);
}

ExprPtr check_assertion(const Type& t, const ExprPtr& subject) {
  NormalizedType n = normalize(t);
  if (n.var == kWildcard) return n.pred;
  return ast::substitute(n.pred, n.var, subject);
}

bool is_trivially_true(const Expr& pred) {
  if (pred.kind == Expr::Kind::Bool) return pred.bool_value;
  if (pred.is_call_to("and") && pred.arity() == 2) {
    return is_trivially_true(pred.arg(0)) && is_trivially_true(pred.arg(1));
  }
  return false;
}

std::vector<ExprPtr> layer_predicates(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Simple:
      return {};
    case Type::Kind::Lang:
      return {Expr::lambda({kLangBinder},
                           Expr::in_lang(Expr::var(kLangBinder), t.name))};
    case Type::Kind::Refine:
      break;
  }
  auto layers = layer_predicates(*t.base);
  layers.push_back(Expr::lambda({effective_binder(t)}, t.pred));
  return layers;
}

bool mentions_function(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Simple: return t.simple.is_fun();
    case Type::Kind::Lang: return false;
    case Type::Kind::Refine: return mentions_function(*t.base);
  }
  return false;
}

}  // namespace flat::types
