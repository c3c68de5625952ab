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
#include <string>
#include <string_view>

#include "flatcore/ast.hpp"
#include "flatcore/builtins.hpp"
#include "flatcore/grammar.hpp"

namespace flat::front {

struct ParseOptions {
  // Accept `$`-prefixed identifiers, as printed by the instrumenter.
  bool allow_reserved = false;
};

// Parses one `.flat` source. `known` holds the language types defined
// before this source (the builtin library and earlier files); `lang`
// blocks are parsed and validated against it in order.
ast::Program parse_program(std::string_view source, const std::string& file,
                           const grammar::Registry& known,
                           ParseOptions options = {});

ast::ExprPtr parse_expr(std::string_view source, ParseOptions options = {});
ast::TypePtr parse_type(std::string_view source, ParseOptions options = {});

struct ResolvedProgram {
  ast::Program program;
  grammar::Registry registry;
  std::map<std::string, ast::MethodMeta> meta;
};

// Binds every name, registers the program's grammars on top of `library`,
// fixes the grammar of every `e[path]` from the static language type of
// `e`, and computes method metadata. Throws UnresolvedName,
// DuplicateDefinition and grammar errors.
ResolvedProgram resolve(ast::Program program, const grammar::Registry& library,
                        const interp::Builtins& builtins =
                            interp::Builtins::standard());

// Name of the return-value binder in post-conditions of `m`.
std::string return_binder(const ast::MethodDef& m);

}  // namespace flat::front
