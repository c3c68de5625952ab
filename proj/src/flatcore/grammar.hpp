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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "flatcore/common.hpp"

namespace flat::grammar {

inline constexpr int kMaxRepetition = 1000;
inline constexpr char32_t kAsciiMax = 0x7F;

struct CharRange {
  char32_t lo;
  char32_t hi;
  bool operator==(const CharRange&) const = default;
};

// One node of the EBNF meta notation. Unary repetition forms keep their
// operand in items[0]; Concat and Alt keep all parts in items.
struct Clause {
  enum class Kind {
    Terminal,
    Nonterminal,
    Concat,
    Alt,
    Star,
    Plus,
    Opt,
    RepeatExact,
    RepeatRange,
    CharSet,
  };

  Kind kind = Kind::Terminal;
  Text literal;
  std::string name;
  std::vector<Clause> items;
  int min = 0;  // RepeatExact: k; RepeatRange: k1
  int max = 0;  // RepeatRange: k2
  std::vector<CharRange> ranges;
  bool negated = false;

  static Clause terminal(Text literal);
  static Clause nonterminal(std::string name);
  static Clause concat(std::vector<Clause> parts);
  static Clause alt(std::vector<Clause> choices);
  static Clause star(Clause body);
  static Clause plus(Clause body);
  static Clause opt(Clause body);
  static Clause repeat(Clause body, int k);
  static Clause repeat(Clause body, int k1, int k2);
  static Clause charset(std::vector<CharRange> ranges, bool negated = false);

  const Clause& body() const { return items.front(); }
  bool operator==(const Clause&) const = default;
};

struct Rule {
  std::string name;
  Clause body;
  int line = 0;
  bool operator==(const Rule& o) const {
    return name == o.name && body == o.body;
  }
};

struct Grammar {
  std::string name;
  std::vector<Rule> rules;
  std::set<std::string> imports;
  std::vector<std::string> warnings;

  const Rule* find(std::string_view rule) const;
};

class Registry;

// Parses the body of a `lang` block. `registry` supplies the names of
// previously defined language types that the rules may reference.
Grammar parse_grammar(std::string_view source, const Registry& registry,
                      std::string name = "");

std::string print_clause(const Clause& clause);
std::string print_grammar(const Grammar& grammar);

// Plain CFG produced by desugaring. Nonterminals are dense integer ids.
struct Atom {
  enum class Kind { Literal, Class, Nonterminal };

  Kind kind = Kind::Literal;
  Text literal;
  std::vector<CharRange> ranges;  // sorted, disjoint, non-adjacent
  uint64_t class_size = 0;
  int nonterminal = -1;

  bool contains(char32_t c) const;
  char32_t nth(uint64_t index) const;  // index < class_size

  static Atom lit(Text text);
  static Atom cls(std::vector<CharRange> ranges);
  static Atom nt(int id);
};

using Alternative = std::vector<Atom>;

struct CfgNonterminal {
  std::string name;   // unique, mangled
  std::string label;  // user-visible label; empty when synthesized
  std::string origin; // printed source clause for synthesized nonterminals
  std::vector<Alternative> alternatives;

  bool synthesized() const { return label.empty(); }
};

struct CoreCFG {
  std::string name;
  std::vector<CfgNonterminal> nonterminals;
  int start = 0;

  // Filled by finalize(); read by the parser and the generator.
  std::vector<int> min_depth;
  std::vector<std::vector<int>> alt_min_depth;
  std::vector<bool> nullable;
  std::set<std::string> labels;

  int add(std::string name, std::string label, std::string origin = "");
  int find(std::string_view name) const;  // -1 if absent
  std::string display(int id) const;

  // Computes min_depth, nullable and labels. Throws
  // NonProductiveNonterminal.
  void finalize();
};

std::string print_cfg(const CoreCFG& cfg);

// Minimal derivation-tree height per nonterminal (fixed point).
std::vector<int> min_depth(const CoreCFG& cfg);

// Language types known to a program: the user-written grammar plus its
// desugared form.
struct Language {
  std::shared_ptr<const Grammar> grammar;
  std::shared_ptr<const CoreCFG> cfg;
};

class Registry {
 public:
  bool contains(std::string_view name) const;
  const Language* find(std::string_view name) const;
  const Language& at(std::string_view name) const;

  // Desugars and stores the grammar under grammar.name.
  const Language& add(Grammar grammar);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Language, std::less<>> languages_;
};

// Lowers EBNF into a plain CFG, inlining imported grammars under
// name-mangled copies.
CoreCFG desugar(const Grammar& grammar, const Registry& registry);

}  // namespace flat::grammar
