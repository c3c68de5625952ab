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

// Seeded random inputs for property tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatcore/fuzz.hpp"
#include "flatcore/runtime.hpp"

namespace flat::gen {

// Random refinement type with up to `max_layers` layers over Int, Bool or
// the IntExp language, as source text.
struct RandomType {
  std::string text;
  enum class Base { Int, Bool, IntExp } base = Base::Int;
};
RandomType random_type(fuzz::Rng& rng, int max_layers);

// Random value of the erased base type; strings come from IntExp or are
// near misses.
interp::Value random_value(fuzz::Rng& rng, RandomType::Base base);

struct RandomProgram {
  std::string source;
  std::string entry;
  std::vector<bool> entry_params_bool;  // per entry parameter: Bool or Int
};

// Terminating program of one to three methods. With `tautologies` every
// parameter, local and return type carries an always-true refinement and
// every method always-true contracts; otherwise all types are simple and
// there are no contracts. Expressions may call the builtin `tick`.
RandomProgram random_program(fuzz::Rng& rng, bool tautologies);

std::vector<interp::Value> random_inputs(fuzz::Rng& rng,
                                         const RandomProgram& p);

}  // namespace flat::gen
