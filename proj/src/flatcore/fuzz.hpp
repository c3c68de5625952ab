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

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "flatcore/ast.hpp"
#include "flatcore/builtins.hpp"
#include "flatcore/front.hpp"
#include "flatcore/grammar.hpp"
#include "flatcore/interp.hpp"
#include "flatcore/runtime.hpp"
#include "json.hpp"

namespace flat::fuzz {

// Seeded source of randomness with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  uint64_t below(uint64_t n);
  // Uniform in [lo, hi].
  int64_t between(int64_t lo, int64_t hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

// Per-index seed derived from a run seed (splitmix64 finalizer).
uint64_t mix_seed(uint64_t seed, uint64_t index);

// max(min_depth(start) + 8, 16)
int default_max_depth(const grammar::CoreCFG& cfg);

// Yield of a random derivation. At every nonterminal an alternative is
// picked uniformly among those whose minimal depth fits the remaining
// budget; class atoms sample uniformly over their members. `max_depth`
// below min_depth(start) is raised to it.
Text generate(const grammar::CoreCFG& cfg, Rng& rng, int max_depth);

struct Producer {
  enum class Kind { Constant, Grammar, Int, Bool };

  Kind kind = Kind::Constant;
  std::string param;
  interp::Value constant;                   // Constant
  std::shared_ptr<const grammar::CoreCFG> cfg;  // Grammar
  std::string source;                       // language name or file
  int max_depth = 16;                       // Grammar
  int64_t lo = -100, hi = 100;              // Int
  // Unary filter over the produced value; null when every value passes.
  ast::ExprPtr filter;
  int max_attempts = 1000;

  std::string describe() const;
};

// User replacement for the default producer of one parameter.
struct Override {
  enum class Kind { Constant, Grammar };

  Kind kind = Kind::Constant;
  interp::Value value;
  std::shared_ptr<const grammar::CoreCFG> cfg;
  std::string source;
};

struct ProducerOptions {
  int max_depth = 0;  // 0: default_max_depth per grammar
  int max_attempts = 1000;
};

// One producer per parameter. Language-based parameters draw from their
// grammar filtered by the residual predicate; Int and Bool draw from small
// domains filtered by the refinement; overrides win. Throws NoProducer.
std::vector<Producer> synthesize_producers(
    const ast::MethodMeta& m, const grammar::Registry& registry,
    const std::map<std::string, Override>& overrides = {},
    ProducerOptions options = {});

// First accepted value. Throws AttemptsExhausted.
interp::Value produce(const Producer& p, Rng& rng, interp::Interpreter& interp);

struct Failure {
  size_t index = 0;
  std::vector<interp::Value> inputs;
  interp::RuntimeError error;
  uint64_t replay_seed = 0;
  // Argument-type failures cannot stem from the method under test.
  bool generator_bug = false;
};

struct FuzzReport {
  std::string method;
  uint64_t seed = 0;
  size_t requested = 0;
  size_t executed = 0;
  size_t discarded = 0;
  size_t passes = 0;
  std::vector<Failure> failures;
  double wall_time_ms = 0;

  nlohmann::ordered_json to_json(bool include_time = true) const;
};

struct FuzzOptions {
  size_t num = 1000;
  uint64_t seed = 0;
  ProducerOptions producers;
  std::map<std::string, Override> overrides;
  interp::InterpOptions interp;
};

// Tests `method` of an instrumented program on `num` generated tuples.
// Tuple i is drawn from Rng(mix_seed(seed, i)); tuples failing the
// precondition are discarded. Throws NoProducer and AttemptsExhausted.
FuzzReport fuzz(const front::ResolvedProgram& instrumented,
                const std::string& method, const FuzzOptions& options,
                const interp::Builtins& builtins =
                    interp::Builtins::standard());

}  // namespace flat::fuzz
