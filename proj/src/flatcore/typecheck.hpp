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
#include <vector>

#include "flatcore/ast.hpp"
#include "flatcore/builtins.hpp"
#include "flatcore/front.hpp"

namespace flat::typecheck {

struct Diagnostic {
  std::string code;  // e.g. TypeMismatch, SubjectNotLanguageTyped
  std::string message;
  SourceLoc loc;

  std::string str() const;
};

// Language types become String; refinements are dropped.
ast::SimpleType erase(const ast::Type& t);

// Simple-type check of the erased program. Untyped `var x = e` locals
// receive their synthesized type in Stmt::inferred. Empty result means the
// program is simply typed.
std::vector<Diagnostic> simple_typecheck(
    front::ResolvedProgram& program,
    const interp::Builtins& builtins = interp::Builtins::standard());

}  // namespace flat::typecheck
