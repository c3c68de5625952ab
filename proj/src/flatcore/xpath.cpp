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

#include "flatcore/xpath.hpp"

#include <set>
#include <unordered_map>

namespace flat::xpath {

using parse::DerivationTree;

std::string XPath::str() const {
  std::string out;
  for (const auto& s : selectors) {
    switch (s.kind) {
      case Selector::Kind::Child:
        out += "." + s.label + "[" + std::to_string(s.index) + "]";
        break;
      case Selector::Kind::ChildAll:
        out += "." + s.label;
        break;
      case Selector::Kind::DescendantAll:
        out += ".." + s.label;
        break;
    }
  }
  return out;
}

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

XPath parse_xpath(std::string_view text) {
  auto fail = [&](const std::string& what, size_t at) -> void {
    throw Error(Errc::Syntax, "bad XPath '" + std::string(text) + "': " +
                                  what + " at position " +
                                  std::to_string(at + 1));
  };
  XPath path;
  size_t i = 0;
  if (text.empty()) fail("empty path", 0);
  while (i < text.size()) {
    if (text[i] != '.') fail("expected '.'", i);
    ++i;
    Selector sel;
    if (i < text.size() && text[i] == '.') {
      ++i;
      sel.kind = Selector::Kind::DescendantAll;
    }
    size_t begin = i;
    if (i >= text.size() || !ident_start(text[i])) fail("expected a label", i);
    while (i < text.size() && ident_char(text[i])) ++i;
    sel.label = std::string(text.substr(begin, i - begin));
    if (i < text.size() && text[i] == '[') {
      if (sel.kind == Selector::Kind::DescendantAll) {
        fail("index is only allowed on direct-child selectors", i);
      }
      ++i;
      size_t digits = i;
      long k = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        k = k * 10 + (text[i] - '0');
        if (k > 1'000'000'000) fail("index too large", digits);
        ++i;
      }
      if (i == digits) fail("expected an index", i);
      if (i >= text.size() || text[i] != ']') fail("expected ']'", i);
      ++i;
      if (k < 1) fail("indices are 1-based", digits);
      sel.kind = Selector::Kind::Child;
      sel.index = static_cast<int>(k);
    }
    path.selectors.push_back(std::move(sel));
  }
  return path;
}

void check_labels(const XPath& path, const grammar::CoreCFG& cfg) {
  for (const auto& s : path.selectors) {
    if (!cfg.labels.count(s.label)) {
      std::string lang = path.lang.empty() ? cfg.name : path.lang;
      throw Error(Errc::UnknownLabel, "'" + s.label +
                                          "' is not a nonterminal of " + lang);
    }
  }
}

XPath parse_xpath(const std::string& lang, std::string_view text,
                  const grammar::Registry& registry) {
  XPath path = parse_xpath(text);
  path.lang = lang;
  check_labels(path, *registry.at(lang).cfg);
  return path;
}

namespace {

void number_preorder(const DerivationTree& t,
                     std::unordered_map<const DerivationTree*, size_t>& order,
                     std::vector<const DerivationTree*>& nodes) {
  order.emplace(&t, nodes.size());
  nodes.push_back(&t);
  for (const auto& c : t.children) number_preorder(c, order, nodes);
}

void descendants(const DerivationTree& t, const std::string& label,
                 std::vector<const DerivationTree*>& out) {
  for (const auto& c : t.children) {
    if (c.label == label) out.push_back(&c);
    descendants(c, label, out);
  }
}

}  // namespace

std::vector<const DerivationTree*> select_nodes(const DerivationTree& tree,
                                                const XPath& path) {
  std::unordered_map<const DerivationTree*, size_t> order;
  std::vector<const DerivationTree*> nodes;
  number_preorder(tree, order, nodes);

  std::set<size_t> current{0};
  for (const auto& sel : path.selectors) {
    std::set<size_t> next;
    for (size_t idx : current) {
      const DerivationTree& node = *nodes[idx];
      switch (sel.kind) {
        case Selector::Kind::Child: {
          int seen = 0;
          for (const auto& c : node.children) {
            if (c.label == sel.label && ++seen == sel.index) {
              next.insert(order.at(&c));
              break;
            }
          }
          break;
        }
        case Selector::Kind::ChildAll:
          for (const auto& c : node.children) {
            if (c.label == sel.label) next.insert(order.at(&c));
          }
          break;
        case Selector::Kind::DescendantAll: {
          std::vector<const DerivationTree*> found;
          descendants(node, sel.label, found);
          for (const auto* f : found) next.insert(order.at(f));
          break;
        }
      }
    }
    current = std::move(next);
  }

  std::vector<const DerivationTree*> out;
  for (size_t idx : current) out.push_back(nodes[idx]);
  return out;
}

std::vector<Text> select_all(const DerivationTree& tree, const XPath& path) {
  std::vector<Text> out;
  for (const auto* node : select_nodes(tree, path)) out.push_back(node->yield());
  return out;
}

Text select_unique(const DerivationTree& tree, const XPath& path) {
  auto nodes = select_nodes(tree, path);
  if (nodes.empty()) {
    throw Error(Errc::NoMatch, "XPath " + path.str() + " matches no node");
  }
  if (nodes.size() > 1) {
    throw Error(Errc::AmbiguousMatch, "XPath " + path.str() + " matches " +
                                          std::to_string(nodes.size()) +
                                          " nodes, expected exactly one");
  }
  return nodes.front()->yield();
}

}  // namespace flat::xpath
