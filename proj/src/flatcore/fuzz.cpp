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

#include "flatcore/fuzz.hpp"

#include <algorithm>
#include <chrono>

#include "flatcore/typecheck.hpp"
#include "flatcore/types.hpp"

namespace flat::fuzz {

using ast::Expr;
using ast::ExprPtr;
using interp::Value;
using nlohmann::ordered_json;

uint64_t Rng::below(uint64_t n) {
  // Rejection sampling keeps the draw unbiased for every n.
  uint64_t threshold = (0 - n) % n;
  for (;;) {
    uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

int64_t Rng::between(int64_t lo, int64_t hi) {
  uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (span == 0) return static_cast<int64_t>(next());
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + below(span));
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int default_max_depth(const grammar::CoreCFG& cfg) {
  return std::max(cfg.min_depth[cfg.start] + 8, 16);
}

namespace {

void expand(const grammar::CoreCFG& cfg, int nt, int budget, Rng& rng,
            Text& out) {
  const auto& alts = cfg.nonterminals[nt].alternatives;
  const auto& depths = cfg.alt_min_depth[nt];
  std::vector<size_t> feasible;
  for (size_t a = 0; a < alts.size(); ++a) {
    if (depths[a] <= budget) feasible.push_back(a);
  }
  // Callers only descend within budget, so this is never empty.
  size_t pick = feasible[rng.below(feasible.size())];
  for (const auto& atom : alts[pick]) {
    switch (atom.kind) {
      case grammar::Atom::Kind::Literal:
        out += atom.literal;
        break;
      case grammar::Atom::Kind::Class:
        out += atom.nth(rng.below(atom.class_size));
        break;
      case grammar::Atom::Kind::Nonterminal:
        expand(cfg, atom.nonterminal, budget - 1, rng, out);
        break;
    }
  }
}

std::shared_ptr<const grammar::CoreCFG> cfg_of(const grammar::Registry& r,
                                               const std::string& lang) {
  return r.at(lang).cfg;
}

}  // namespace

Text generate(const grammar::CoreCFG& cfg, Rng& rng, int max_depth) {
  Text out;
  expand(cfg, cfg.start, std::max(max_depth, cfg.min_depth[cfg.start]), rng,
         out);
  return out;
}

std::string Producer::describe() const {
  std::string out = param + ": ";
  switch (kind) {
    case Kind::Constant: out += "constant " + interp::render(constant); break;
    case Kind::Grammar:
      out += "grammar " + source + " (max depth " + std::to_string(max_depth) +
             ")";
      break;
    case Kind::Int:
      out += "integer in [" + std::to_string(lo) + ", " + std::to_string(hi) +
             "]";
      break;
    case Kind::Bool: out += "fair coin"; break;
  }
  if (filter) out += " filtered by " + ast::print_expr(*filter);
  return out;
}

std::vector<Producer> synthesize_producers(
    const ast::MethodMeta& m, const grammar::Registry& registry,
    const std::map<std::string, Override>& overrides, ProducerOptions options) {
  for (const auto& [name, _] : overrides) {
    bool known = std::any_of(m.params.begin(), m.params.end(),
                             [&](const ast::Param& p) { return p.name == name; });
    if (!known) {
      throw Error(Errc::Usage,
                  "method " + m.name + " has no parameter '" + name + "'");
    }
  }
  auto depth_for = [&](const grammar::CoreCFG& cfg) {
    int d = options.max_depth > 0 ? options.max_depth : default_max_depth(cfg);
    return std::max(d, cfg.min_depth[cfg.start]);
  };
  auto full_filter = [](const ast::Type& t) -> ExprPtr {
    ExprPtr pred = types::check_predicate(t);
    return types::is_trivially_true(pred->body()) ? nullptr : pred;
  };

  std::vector<Producer> out;
  for (const auto& p : m.params) {
    Producer prod;
    prod.param = p.name;
    prod.max_attempts = std::max(options.max_attempts, 1);
    ast::SimpleType erased = typecheck::erase(*p.type);

    auto ov = overrides.find(p.name);
    if (ov != overrides.end()) {
      if (ov->second.kind == Override::Kind::Constant) {
        prod.kind = Producer::Kind::Constant;
        prod.constant = ov->second.value;
        prod.source = "constant";
      } else {
        prod.kind = Producer::Kind::Grammar;
        prod.cfg = ov->second.cfg;
        prod.source = ov->second.source;
        prod.max_depth = depth_for(*prod.cfg);
        prod.filter = full_filter(*p.type);
      }
      out.push_back(std::move(prod));
      continue;
    }

    std::string lang = p.type->language();
    if (!lang.empty()) {
      types::NormalizedType n = types::normalize(*p.type, registry);
      ExprPtr membership = Expr::in_lang(Expr::var(n.var), lang);
      std::vector<ExprPtr> rest;
      bool dropped = false;
      for (const auto& c : ast::conjuncts(n.pred)) {
        if (!dropped && ast::equal(*c, *membership)) {
          dropped = true;
          continue;
        }
        rest.push_back(c);
      }
      prod.kind = Producer::Kind::Grammar;
      prod.cfg = cfg_of(registry, lang);
      prod.source = lang;
      prod.max_depth = depth_for(*prod.cfg);
      if (!rest.empty()) prod.filter = Expr::lambda({n.var}, ast::conjoin(rest));
    } else if (erased.kind == ast::SimpleType::Kind::Int) {
      prod.kind = Producer::Kind::Int;
      prod.filter = full_filter(*p.type);
    } else if (erased.kind == ast::SimpleType::Kind::Bool) {
      prod.kind = Producer::Kind::Bool;
      prod.filter = full_filter(*p.type);
    } else {
      throw Error(Errc::NoProducer,
                  "parameter '" + p.name + "' of method " + m.name +
                      " has type " + ast::print_type(*p.type) +
                      " without a grammar; supply one with --using " + p.name +
                      "=<grammar file> or --const " + p.name + "=<json>",
                  p.loc);
    }
    out.push_back(std::move(prod));
  }
  return out;
}

Value produce(const Producer& p, Rng& rng, interp::Interpreter& interp) {
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    Value v;
    switch (p.kind) {
      case Producer::Kind::Constant: v = p.constant; break;
      case Producer::Kind::Grammar:
        v = Value::string(generate(*p.cfg, rng, p.max_depth));
        break;
      case Producer::Kind::Int: v = Value::integer(rng.between(p.lo, p.hi)); break;
      case Producer::Kind::Bool: v = Value::boolean(rng.coin()); break;
    }
    if (!p.filter || interp.apply(p.filter, {v}).as_bool()) return v;
  }
  throw Error(Errc::AttemptsExhausted,
              "no value for parameter '" + p.param + "' passed " +
                  ast::print_expr(*p.filter) + " in " +
                  std::to_string(p.max_attempts) +
                  " attempts (estimated acceptance rate below " +
                  std::to_string(1.0 / p.max_attempts) + ")");
}

ordered_json FuzzReport::to_json(bool include_time) const {
  ordered_json j;
  j["method"] = method;
  j["seed"] = seed;
  j["requested"] = requested;
  j["executed"] = executed;
  j["discarded"] = discarded;
  j["passes"] = passes;
  ordered_json fs = ordered_json::array();
  for (const auto& f : failures) {
    ordered_json e;
    e["index"] = f.index;
    ordered_json inputs = ordered_json::array();
    for (const auto& v : f.inputs) inputs.push_back(interp::to_json(v));
    e["inputs"] = inputs;
    e["error"] = f.error.to_json();
    e["replay_seed"] = f.replay_seed;
    if (f.generator_bug) e["generator_bug"] = true;
    fs.push_back(std::move(e));
  }
  j["failures"] = fs;
  if (include_time) j["wall_time_ms"] = wall_time_ms;
  return j;
}

FuzzReport fuzz(const front::ResolvedProgram& instrumented,
                const std::string& method, const FuzzOptions& options,
                const interp::Builtins& builtins) {
  auto start = std::chrono::steady_clock::now();
  auto it = instrumented.meta.find(method);
  if (it == instrumented.meta.end()) {
    throw Error(Errc::Usage, "no method named '" + method + "'");
  }
  const ast::MethodMeta& meta = it->second;
  std::vector<Producer> producers = synthesize_producers(
      meta, instrumented.registry, options.overrides, options.producers);

  FuzzReport report;
  report.method = method;
  report.seed = options.seed;
  report.requested = options.num;
  bool trivial_pre = types::is_trivially_true(meta.pre->body());

  for (size_t i = 0; i < options.num; ++i) {
    uint64_t replay = mix_seed(options.seed, i);
    Rng rng(replay);
    interp::Interpreter interp(instrumented, builtins, options.interp);
    std::vector<Value> inputs;
    for (const auto& p : producers) inputs.push_back(produce(p, rng, interp));

    if (!trivial_pre) {
      bool holds = false;
      try {
        holds = interp.apply(meta.pre, inputs).as_bool();
      } catch (const interp::RuntimeError&) {
        holds = false;
      }
      if (!holds) {
        ++report.discarded;
        continue;
      }
    }
    ++report.executed;
    try {
      interp.run_method(method, inputs);
      ++report.passes;
    } catch (const interp::RuntimeError& error) {
      bool bug = error.kind == interp::RuntimeKind::ArgType &&
                 error.call_stack.empty();
      report.failures.push_back({i, inputs, error, replay, bug});
    }
  }
  auto end = std::chrono::steady_clock::now();
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return report;
}

}  // namespace flat::fuzz
