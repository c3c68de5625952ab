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

#include "flatcore/parse.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace flat::parse {

using grammar::Alternative;
using grammar::Atom;
using grammar::CoreCFG;

Text DerivationTree::yield() const {
  if (terminal()) return text;
  Text out;
  for (const auto& c : children) out += c.yield();
  return out;
}

namespace {

struct Item {
  int prod;
  int dot;
  size_t origin;
};

struct Key4 {
  int a;
  int b;
  size_t c;
  size_t d;
  bool operator==(const Key4&) const = default;
};

struct Key4Hash {
  size_t operator()(const Key4& k) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
      h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<uint64_t>(k.a));
    mix(static_cast<uint64_t>(k.b));
    mix(k.c);
    mix(k.d);
    return static_cast<size_t>(h);
  }
};

// Earley recognizer with the Aycock-Horspool treatment of nullable
// nonterminals. Multi-character literals scan directly into later sets.
class Chart {
 public:
  Chart(const CoreCFG& cfg, TextView subject) : cfg_(cfg), s_(subject) {
    for (size_t n = 0; n < cfg.nonterminals.size(); ++n) {
      first_prod_.push_back(static_cast<int>(prods_.size()));
      for (size_t a = 0; a < cfg.nonterminals[n].alternatives.size(); ++a) {
        prods_.push_back({static_cast<int>(n), static_cast<int>(a)});
      }
    }
    first_prod_.push_back(static_cast<int>(prods_.size()));
    sets_.resize(s_.size() + 1);
    seen_.resize(s_.size() + 1);
    waiting_.resize(s_.size() + 1);
    predicted_.resize(s_.size() + 1);
    run();
  }

  bool accepted() const { return completed(cfg_.start, 0, s_.size()); }

  bool completed(int nt, size_t i, size_t j) const {
    return completed_.count(Key4{nt, 0, i, j}) != 0;
  }

  size_t furthest() const {
    for (size_t k = sets_.size(); k-- > 0;) {
      if (!sets_[k].empty()) return k;
    }
    return 0;
  }

  int nt_of(int prod) const { return prods_[prod].nt; }
  int prod_of(int nt, int alt) const { return first_prod_[nt] + alt; }
  const Alternative& alt_of(int prod) const {
    const auto& p = prods_[prod];
    return cfg_.nonterminals[p.nt].alternatives[p.alt];
  }

 private:
  struct Prod {
    int nt;
    int alt;
  };

  void add(size_t k, Item item) {
    if (seen_[k].insert(Key4{item.prod, item.dot, item.origin, 0}).second) {
      sets_[k].push_back(item);
    }
  }

  void run() {
    predict(cfg_.start, 0);
    for (size_t k = 0; k <= s_.size(); ++k) {
      for (size_t idx = 0; idx < sets_[k].size(); ++idx) {
        Item item = sets_[k][idx];
        const Alternative& alt = alt_of(item.prod);
        if (static_cast<size_t>(item.dot) == alt.size()) {
          complete(item, k);
          continue;
        }
        const Atom& atom = alt[item.dot];
        Item next{item.prod, item.dot + 1, item.origin};
        switch (atom.kind) {
          case Atom::Kind::Nonterminal: {
            int b = atom.nonterminal;
            waiting_[k][b].push_back(item);
            predict(b, k);
            if (cfg_.nullable[b]) add(k, next);
            break;
          }
          case Atom::Kind::Literal: {
            size_t len = atom.literal.size();
            if (k + len <= s_.size() && s_.compare(k, len, atom.literal) == 0) {
              add(k + len, next);
            }
            break;
          }
          case Atom::Kind::Class:
            if (k < s_.size() && atom.contains(s_[k])) add(k + 1, next);
            break;
        }
      }
    }
  }

  void predict(int nt, size_t k) {
    if (!predicted_[k].insert(nt).second) return;
    for (int p = first_prod_[nt]; p < first_prod_[nt + 1]; ++p) {
      add(k, Item{p, 0, k});
    }
  }

  void complete(const Item& item, size_t k) {
    int b = nt_of(item.prod);
    completed_.insert(Key4{b, 0, item.origin, k});
    auto it = waiting_[item.origin].find(b);
    if (it == waiting_[item.origin].end()) return;
    for (const Item& parent : it->second) {
      add(k, Item{parent.prod, parent.dot + 1, parent.origin});
    }
  }

  const CoreCFG& cfg_;
  TextView s_;
  std::vector<Prod> prods_;
  std::vector<int> first_prod_;
  std::vector<std::vector<Item>> sets_;
  std::vector<std::unordered_set<Key4, Key4Hash>> seen_;
  std::vector<std::unordered_map<int, std::vector<Item>>> waiting_;
  std::vector<std::unordered_set<int>> predicted_;
  std::unordered_set<Key4, Key4Hash> completed_;
};

class TreeBuilder {
 public:
  TreeBuilder(const CoreCFG& cfg, const Chart& chart, TextView subject)
      : cfg_(cfg), chart_(chart), s_(subject) {}

  std::optional<std::vector<DerivationTree>> build(int nt, size_t i,
                                                   size_t j) {
    Key4 key{nt, 0, i, j};
    if (!active_.insert(key).second) return std::nullopt;
    std::optional<std::vector<DerivationTree>> result;
    const auto& info = cfg_.nonterminals[nt];
    for (size_t a = 0; a < info.alternatives.size() && !result; ++a) {
      int prod = chart_.prod_of(nt, static_cast<int>(a));
      if (!fits(prod, 0, i, j)) continue;
      std::vector<DerivationTree> kids;
      if (!build_seq(prod, 0, i, j, kids)) continue;
      if (info.synthesized()) {
        result = std::move(kids);
      } else {
        DerivationTree node;
        node.label = info.label;
        node.lo = i;
        node.hi = j;
        node.children = std::move(kids);
        result = std::vector<DerivationTree>{};
        result->push_back(std::move(node));
      }
    }
    active_.erase(key);
    return result;
  }

 private:
  // Whether atoms [dot..] of `prod` can derive s[pos, end).
  bool fits(int prod, int dot, size_t pos, size_t end) {
    const Alternative& alt = chart_.alt_of(prod);
    if (static_cast<size_t>(dot) == alt.size()) return pos == end;
    Key4 key{prod, dot, pos, end};
    auto memo = fits_.find(key);
    if (memo != fits_.end()) return memo->second;
    bool ok = false;
    const Atom& atom = alt[dot];
    switch (atom.kind) {
      case Atom::Kind::Literal: {
        size_t len = atom.literal.size();
        ok = pos + len <= end && s_.compare(pos, len, atom.literal) == 0 &&
             fits(prod, dot + 1, pos + len, end);
        break;
      }
      case Atom::Kind::Class:
        ok = pos < end && atom.contains(s_[pos]) &&
             fits(prod, dot + 1, pos + 1, end);
        break;
      case Atom::Kind::Nonterminal:
        for (size_t e = end + 1; e-- > pos && !ok;) {
          ok = chart_.completed(atom.nonterminal, pos, e) &&
               fits(prod, dot + 1, e, end);
        }
        break;
    }
    fits_.emplace(key, ok);
    return ok;
  }

  bool build_seq(int prod, int dot, size_t pos, size_t end,
                 std::vector<DerivationTree>& kids) {
    const Alternative& alt = chart_.alt_of(prod);
    if (static_cast<size_t>(dot) == alt.size()) return pos == end;
    const Atom& atom = alt[dot];
    if (atom.kind != Atom::Kind::Nonterminal) {
      size_t len = atom.kind == Atom::Kind::Literal ? atom.literal.size() : 1;
      DerivationTree leaf;
      leaf.lo = pos;
      leaf.hi = pos + len;
      leaf.text = Text(s_.substr(pos, len));
      kids.push_back(std::move(leaf));
      if (build_seq(prod, dot + 1, pos + len, end, kids)) return true;
      kids.pop_back();
      return false;
    }
    for (size_t e = end + 1; e-- > pos;) {
      if (!chart_.completed(atom.nonterminal, pos, e)) continue;
      if (!fits(prod, dot + 1, e, end)) continue;
      auto sub = build(atom.nonterminal, pos, e);
      if (!sub) continue;
      size_t mark = kids.size();
      for (auto& t : *sub) kids.push_back(std::move(t));
      if (build_seq(prod, dot + 1, e, end, kids)) return true;
      kids.resize(mark);
    }
    return false;
  }

  const CoreCFG& cfg_;
  const Chart& chart_;
  TextView s_;
  std::unordered_map<Key4, bool, Key4Hash> fits_;
  std::unordered_set<Key4, Key4Hash> active_;
};

}  // namespace

bool recognize(const CoreCFG& cfg, TextView subject) {
  return Chart(cfg, subject).accepted();
}

DerivationTree parse_tree(const CoreCFG& cfg, TextView subject) {
  Chart chart(cfg, subject);
  if (!chart.accepted()) {
    size_t at = chart.furthest();
    std::string where = cfg.name.empty() ? "the grammar" : cfg.name;
    std::string msg =
        at >= subject.size()
            ? "unexpected end of input at position " + std::to_string(at + 1)
            : "unexpected " + quote(subject.substr(at, 1)) + " at position " +
                  std::to_string(at + 1);
    throw NotInLanguage("string is not in " + where + ": " + msg, at);
  }
  TreeBuilder builder(cfg, chart, subject);
  auto nodes = builder.build(cfg.start, 0, subject.size());
  // The start nonterminal is never synthesized, so exactly one node.
  return std::move(nodes->front());
}

namespace {

nlohmann::ordered_json to_json(const DerivationTree& t) {
  nlohmann::ordered_json j;
  if (t.terminal()) {
    j["label"] = nullptr;
  } else {
    j["label"] = t.label;
  }
  j["span"] = {t.lo, t.hi};
  if (t.terminal()) j["text"] = to_utf8(t.text);
  j["children"] = nlohmann::ordered_json::array();
  for (const auto& c : t.children) j["children"].push_back(to_json(c));
  return j;
}

}  // namespace

std::string tree_to_json(const DerivationTree& tree, int indent) {
  return to_json(tree).dump(indent);
}

}  // namespace flat::parse
