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
#include <utility>
#include <vector>

#include "flatcore/grammar.hpp"

namespace flat::library {

struct GrammarSource {
  std::string name;
  std::string rules;
};

// Builtin language types in definition order (later ones may import
// earlier ones).
const std::vector<GrammarSource>& sources();

// Registry preloaded with every builtin language type.
const grammar::Registry& builtin_registry();

}  // namespace flat::library
