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
#include <string_view>
#include <vector>

#include "flatcore/grammar.hpp"
#include "flatcore/parse.hpp"

namespace flat::xpath {

struct Selector {
  enum class Kind {
    Child,          // .A[k]
    ChildAll,       // .A
    DescendantAll,  // ..A
  };

  Kind kind = Kind::ChildAll;
  std::string label;
  int index = 0;  // 1-based, Child only

  bool operator==(const Selector&) const = default;
};

struct XPath {
  std::string lang;  // grammar the labels are interpreted against
  std::vector<Selector> selectors;

  std::string str() const;
  bool operator==(const XPath&) const = default;
};

// Syntax only; `lang` is left empty.
XPath parse_xpath(std::string_view text);

// Parses and checks every label against the named language.
XPath parse_xpath(const std::string& lang, std::string_view text,
                  const grammar::Registry& registry);

// Throws UnknownLabel when a selector names no nonterminal of `cfg`.
void check_labels(const XPath& path, const grammar::CoreCFG& cfg);

std::vector<const parse::DerivationTree*> select_nodes(
    const parse::DerivationTree& tree, const XPath& path);

// Yields of all matched nodes in pre-order, each distinct node once.
std::vector<Text> select_all(const parse::DerivationTree& tree,
                             const XPath& path);

// Throws NoMatch or AmbiguousMatch unless exactly one node matches.
Text select_unique(const parse::DerivationTree& tree, const XPath& path);

}  // namespace flat::xpath
