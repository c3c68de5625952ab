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

#include <string>

#include "flatcore/ast.hpp"
#include "flatcore/grammar.hpp"

namespace flat::types {

// Binder introduced for language types.
inline constexpr const char* kLangBinder = "s";

struct NormalizedType {
  std::string var;  // kWildcard when the predicate ignores the value
  ast::SimpleType base;
  ast::ExprPtr pred;

  std::string str() const;
};

// {x: tau | e} with a simple base. Literal `true` conjuncts are dropped
// while flattening, so norm(Int) has predicate `true` and nested
// refinements collapse to one conjunction.
NormalizedType normalize(const ast::Type& t);

// As above, additionally requiring every language name to be registered.
NormalizedType normalize(const ast::Type& t, const grammar::Registry& registry);

// The normalized type read back as a refinement type.
ast::TypePtr embed(const NormalizedType& n);

// Unary predicate `(x) -> pred` of the normalized type.
ast::ExprPtr check_predicate(const ast::Type& t);

// The predicate applied to `subject` by substitution, e.g. `host in Host`.
ast::ExprPtr check_assertion(const ast::Type& t, const ast::ExprPtr& subject);

// Syntactic: `true`, or a conjunction of `true`s.
bool is_trivially_true(const ast::Expr& pred);

// Every refinement layer of `t` from the inside out, each as a unary
// predicate over the value. Used by tests as the layer-wise reference.
std::vector<ast::ExprPtr> layer_predicates(const ast::Type& t);

// Binder of a refinement. One written without a binder inherits the
// nearest explicit binder below it; language types bind kLangBinder and
// simple types the wildcard.
std::string effective_binder(const ast::Type& t);

// Whether a function type occurs anywhere in `t`.
bool mentions_function(const ast::Type& t);

}  // namespace flat::types
