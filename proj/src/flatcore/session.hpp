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

#include "flatcore/builtins.hpp"
#include "flatcore/front.hpp"
#include "flatcore/typecheck.hpp"

namespace flat::session {

struct Source {
  std::string name;
  std::string text;
};

struct Compiled {
  front::ResolvedProgram program;
  std::vector<typecheck::Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Parses the sources in order (each sees the languages of the builtin
// library and of earlier sources), merges their definitions, resolves and
// simple-typechecks. Throws Error on syntax and resolution errors.
Compiled compile(const std::vector<Source>& sources,
                 const interp::Builtins& builtins =
                     interp::Builtins::standard(),
                 front::ParseOptions options = {});

// Whole file as bytes. Throws Error(Usage).
std::string read_file(const std::string& path);

}  // namespace flat::session
