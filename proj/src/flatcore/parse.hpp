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

#include "flatcore/grammar.hpp"

namespace flat::parse {

// Derivation tree over the user-written grammar: nonterminals synthesized
// by desugaring are spliced out and their children hoisted.
struct DerivationTree {
  std::string label;  // empty for terminal leaves
  size_t lo = 0;      // span in scalar values, half-open
  size_t hi = 0;
  Text text;          // leaves only
  std::vector<DerivationTree> children;

  bool terminal() const { return label.empty(); }
  Text yield() const;
};

class NotInLanguage : public Error {
 public:
  NotInLanguage(std::string message, size_t offset)
      : Error(Errc::NotInLanguage, std::move(message)), offset_(offset) {}

  // 0-based offset where no parse could continue; diagnostics print it
  // 1-based.
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

bool recognize(const grammar::CoreCFG& cfg, TextView subject);

// Ambiguity is resolved by lowest alternative index first, then the
// longest leftmost child.
DerivationTree parse_tree(const grammar::CoreCFG& cfg, TextView subject);

// {"label": ..., "span": [lo, hi], "children": [...]}; leaves carry
// "label": null and a "text" field.
std::string tree_to_json(const DerivationTree& tree, int indent = -1);

}  // namespace flat::parse
