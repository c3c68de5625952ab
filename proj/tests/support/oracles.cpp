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

#include "oracles.hpp"

#include <functional>

namespace flat::oracle {

using grammar::Clause;
using parse::DerivationTree;

BoundedLanguage::BoundedLanguage(const grammar::Grammar& g,
                                 const grammar::Registry& registry,
                                 size_t max_len, Text alphabet)
    : grammar_(g),
      registry_(registry),
      max_len_(max_len),
      alphabet_(std::move(alphabet)) {
  for (const auto& r : g.rules) rules_[r.name];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      std::set<Text> next = eval(r.body);
      if (next.size() != rules_[r.name].size()) {
        rules_[r.name] = std::move(next);
        changed = true;
      }
    }
  }
}

std::set<Text> BoundedLanguage::concat(const std::set<Text>& a,
                                       const std::set<Text>& b) const {
  std::set<Text> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.size() + y.size() <= max_len_) out.insert(x + y);
    }
  }
  return out;
}

const std::set<Text>& BoundedLanguage::imported(const std::string& name) {
  auto it = imports_.find(name);
  if (it == imports_.end()) {
    const auto& lang = registry_.at(name);
    it = imports_
             .emplace(name, std::make_unique<BoundedLanguage>(
                                *lang.grammar, registry_, max_len_, alphabet_))
             .first;
  }
  return it->second->sentences();
}

std::set<Text> BoundedLanguage::eval(const Clause& c) {
  using K = Clause::Kind;
  switch (c.kind) {
    case K::Terminal:
      if (c.literal.size() <= max_len_) return {c.literal};
      return {};
    case K::Nonterminal:
      if (rules_.count(c.name)) return rules_[c.name];
      return imported(c.name);
    case K::Concat: {
      std::set<Text> acc{Text()};
      for (const auto& part : c.items) acc = concat(acc, eval(part));
      return acc;
    }
    case K::Alt: {
      std::set<Text> acc;
      for (const auto& alt : c.items) {
        auto s = eval(alt);
        acc.insert(s.begin(), s.end());
      }
      return acc;
    }
    case K::Star:
    case K::Plus: {
      std::set<Text> body = eval(c.body());
      std::set<Text> acc{Text()};
      for (;;) {
        std::set<Text> next = acc;
        auto more = concat(acc, body);
        next.insert(more.begin(), more.end());
        if (next.size() == acc.size()) break;
        acc = std::move(next);
      }
      if (c.kind == K::Plus) return concat(body, acc);
      return acc;
    }
    case K::Opt: {
      std::set<Text> acc = eval(c.body());
      acc.insert(Text());
      return acc;
    }
    case K::RepeatExact:
    case K::RepeatRange: {
      int lo = c.min;
      int hi = c.kind == K::RepeatExact ? c.min : c.max;
      std::set<Text> body = eval(c.body());
      std::set<Text> power{Text()};
      std::set<Text> acc;
      for (int k = 0; k <= hi; ++k) {
        if (k >= lo) acc.insert(power.begin(), power.end());
        std::set<Text> next = concat(power, body);
        if (next.empty() || (k >= lo && next == power)) break;
        power = std::move(next);
      }
      return acc;
    }
    case K::CharSet: {
      auto member = [&](char32_t ch) {
        for (const auto& r : c.ranges) {
          if (r.lo <= ch && ch <= r.hi) return true;
        }
        return false;
      };
      std::set<Text> acc;
      if (max_len_ == 0) return acc;
      if (!alphabet_.empty()) {
        // Queries only use the alphabet, so other members are irrelevant.
        for (char32_t ch : alphabet_) {
          if (member(ch) != c.negated) acc.insert(Text(1, ch));
        }
      } else {
        for (const auto& r : c.ranges) {
          for (char32_t ch = r.lo; ch <= r.hi; ++ch) acc.insert(Text(1, ch));
        }
      }
      return acc;
    }
  }
  return {};
}

std::vector<const DerivationTree*> brute_select(const DerivationTree& tree,
                                                const xpath::XPath& path) {
  std::vector<const DerivationTree*> nodes;
  std::vector<int> parent;
  std::function<void(const DerivationTree&, int)> walk =
      [&](const DerivationTree& n, int up) {
        int me = static_cast<int>(nodes.size());
        nodes.push_back(&n);
        parent.push_back(up);
        for (const auto& c : n.children) walk(c, me);
      };
  walk(tree, -1);

  // reach(n, i): node n is the end of a chain matching selectors[0, i).
  std::map<std::pair<int, size_t>, bool> memo;
  std::function<bool(int, size_t)> reach = [&](int n, size_t i) -> bool {
    if (i == 0) return n == 0;
    auto key = std::make_pair(n, i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& sel = path.selectors[i - 1];
    bool ok = false;
    if (nodes[n]->label == sel.label && parent[n] >= 0) {
      int up = parent[n];
      switch (sel.kind) {
        case xpath::Selector::Kind::ChildAll:
          ok = reach(up, i - 1);
          break;
        case xpath::Selector::Kind::Child: {
          int rank = 0;
          for (const auto& sib : nodes[up]->children) {
            if (sib.label == sel.label) ++rank;
            if (&sib == nodes[n]) break;
          }
          ok = rank == sel.index && reach(up, i - 1);
          break;
        }
        case xpath::Selector::Kind::DescendantAll:
          for (int a = up; a >= 0 && !ok; a = parent[a]) ok = reach(a, i - 1);
          break;
      }
    }
    memo[key] = ok;
    return ok;
  };

  std::vector<const DerivationTree*> out;
  for (size_t n = 0; n < nodes.size(); ++n) {
    if (reach(static_cast<int>(n), path.selectors.size())) out.push_back(nodes[n]);
  }
  return out;
}

int64_t scan_indexof(const Text& s, const Text& t, int64_t i) {
  int64_t n = static_cast<int64_t>(s.size());
  int64_t m = static_cast<int64_t>(t.size());
  if (i < 0 || i > n) return -1;
  for (int64_t p = i; p + m <= n; ++p) {
    bool hit = true;
    for (int64_t k = 0; k < m && hit; ++k) hit = s[p + k] == t[k];
    if (hit) return p;
  }
  return -1;
}

Text scan_substr(const Text& s, int64_t i, int64_t n) {
  Text out;
  if (i < 0 || n <= 0) return out;
  for (int64_t p = i; p < static_cast<int64_t>(s.size()) && p < i + n; ++p) {
    out.push_back(s[p]);
  }
  return out;
}

Text scan_at(const Text& s, int64_t i) {
  for (int64_t p = 0; p < static_cast<int64_t>(s.size()); ++p) {
    if (p == i) return Text(1, s[p]);
  }
  return Text();
}

std::optional<int64_t> scan_str_to_int(const Text& s) {
  if (s.empty()) return -1;
  int64_t v = 0;
  for (char32_t c : s) {
    if (c < U'0' || c > U'9') return -1;
    if (v > (INT64_MAX - 9) / 10) return std::nullopt;
    v = v * 10 + (c - U'0');
  }
  return v;
}

}  // namespace flat::oracle
