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

#include <algorithm>
#include <limits>

#include "flatcore/grammar.hpp"

namespace flat::grammar {

namespace {

std::vector<CharRange> normalize_ranges(std::vector<CharRange> ranges) {
  std::sort(ranges.begin(), ranges.end(),
            [](const CharRange& a, const CharRange& b) { return a.lo < b.lo; });
  std::vector<CharRange> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && r.lo <= merged.back().hi + 1) {
      merged.back().hi = std::max(merged.back().hi, r.hi);
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

std::vector<CharRange> ascii_complement(const std::vector<CharRange>& ranges) {
  std::vector<CharRange> out;
  char32_t next = 0;
  for (const auto& r : normalize_ranges(ranges)) {
    if (r.lo > kAsciiMax) break;
    if (r.lo > next) out.push_back({next, r.lo - 1});
    next = std::max<char32_t>(next, r.hi + 1);
  }
  if (next <= kAsciiMax) out.push_back({next, kAsciiMax});
  return out;
}

}  // namespace

bool Atom::contains(char32_t c) const {
  auto it = std::upper_bound(
      ranges.begin(), ranges.end(), c,
      [](char32_t v, const CharRange& r) { return v < r.lo; });
  if (it == ranges.begin()) return false;
  --it;
  return c <= it->hi;
}

char32_t Atom::nth(uint64_t index) const {
  for (const auto& r : ranges) {
    uint64_t width = static_cast<uint64_t>(r.hi - r.lo) + 1;
    if (index < width) return r.lo + static_cast<char32_t>(index);
    index -= width;
  }
  return ranges.back().hi;
}

Atom Atom::lit(Text text) {
  Atom a;
  a.kind = Kind::Literal;
  a.literal = std::move(text);
  return a;
}

Atom Atom::cls(std::vector<CharRange> ranges) {
  Atom a;
  a.kind = Kind::Class;
  a.ranges = normalize_ranges(std::move(ranges));
  for (const auto& r : a.ranges) a.class_size += (r.hi - r.lo) + 1;
  return a;
}

Atom Atom::nt(int id) {
  Atom a;
  a.kind = Kind::Nonterminal;
  a.nonterminal = id;
  return a;
}

int CoreCFG::add(std::string name, std::string label, std::string origin) {
  nonterminals.push_back(
      {std::move(name), std::move(label), std::move(origin), {}});
  return static_cast<int>(nonterminals.size()) - 1;
}

int CoreCFG::find(std::string_view name) const {
  for (size_t i = 0; i < nonterminals.size(); ++i) {
    if (nonterminals[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::string CoreCFG::display(int id) const {
  const auto& n = nonterminals[id];
  if (!n.synthesized()) return n.label;
  return n.name + " (from " + n.origin + ")";
}

std::vector<int> min_depth(const CoreCFG& cfg) {
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> depth(cfg.nonterminals.size(), kInf);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t n = 0; n < cfg.nonterminals.size(); ++n) {
      for (const auto& alt : cfg.nonterminals[n].alternatives) {
        int deepest = 0;
        for (const auto& atom : alt) {
          if (atom.kind != Atom::Kind::Nonterminal) continue;
          deepest = std::max(deepest, depth[atom.nonterminal]);
        }
        if (deepest == kInf) continue;
        if (deepest + 1 < depth[n]) {
          depth[n] = deepest + 1;
          changed = true;
        }
      }
    }
  }
  for (size_t n = 0; n < depth.size(); ++n) {
    if (depth[n] == kInf) {
      std::string where = cfg.name.empty() ? "" : " in grammar " + cfg.name;
      throw Error(Errc::NonProductiveNonterminal,
                  "nonterminal '" + cfg.display(static_cast<int>(n)) +
                      "' derives no finite sentence" + where);
    }
  }
  return depth;
}

void CoreCFG::finalize() {
  min_depth = grammar::min_depth(*this);
  alt_min_depth.assign(nonterminals.size(), {});
  for (size_t n = 0; n < nonterminals.size(); ++n) {
    for (const auto& alt : nonterminals[n].alternatives) {
      int deepest = 0;
      for (const auto& atom : alt) {
        if (atom.kind == Atom::Kind::Nonterminal) {
          deepest = std::max(deepest, min_depth[atom.nonterminal]);
        }
      }
      alt_min_depth[n].push_back(deepest + 1);
    }
  }

  nullable.assign(nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t n = 0; n < nonterminals.size(); ++n) {
      if (nullable[n]) continue;
      for (const auto& alt : nonterminals[n].alternatives) {
        bool all = std::all_of(alt.begin(), alt.end(), [&](const Atom& a) {
          return a.kind == Atom::Kind::Nonterminal && nullable[a.nonterminal];
        });
        if (all) {
          nullable[n] = true;
          changed = true;
          break;
        }
      }
    }
  }

  labels.clear();
  for (const auto& n : nonterminals) {
    if (!n.synthesized()) labels.insert(n.label);
  }
}

namespace {

class Lowerer {
 public:
  Lowerer(CoreCFG& cfg, const Registry& registry)
      : cfg_(cfg), registry_(registry) {}

  // Lowers `g` with every nonterminal name prefixed by `prefix`; the start
  // rule is labeled `start_label`. Returns the id of the start nonterminal.
  int lower(const Grammar& g, const std::string& prefix,
            const std::string& start_label) {
    std::map<std::string, int> local;
    for (const auto& rule : g.rules) {
      std::string label = rule.name == "start" ? start_label : rule.name;
      local[rule.name] = cfg_.add(prefix + rule.name, label);
    }
    for (const auto& rule : g.rules) {
      Scope scope{&local, prefix + rule.name, 0};
      int id = local.at(rule.name);
      std::vector<Alternative> alts;
      if (rule.body.kind == Clause::Kind::Alt) {
        for (const auto& choice : rule.body.items) {
          alts.push_back(sequence(choice, scope));
        }
      } else {
        alts.push_back(sequence(rule.body, scope));
      }
      cfg_.nonterminals[id].alternatives = std::move(alts);
    }
    return local.at("start");
  }

 private:
  struct Scope {
    const std::map<std::string, int>* local;
    std::string owner;
    int counter;
  };

  int reference(const std::string& name, const Scope& scope) {
    auto it = scope.local->find(name);
    if (it != scope.local->end()) return it->second;
    auto done = imported_.find(name);
    if (done != imported_.end()) return done->second;
    // Imports only name languages defined earlier, so this cannot cycle.
    const Language& lang = registry_.at(name);
    int id = lower(*lang.grammar, name + "::", name);
    imported_[name] = id;
    return id;
  }

  Alternative sequence(const Clause& c, Scope& scope) {
    switch (c.kind) {
      case Clause::Kind::Terminal:
        return {Atom::lit(c.literal)};
      case Clause::Kind::Nonterminal:
        return {Atom::nt(reference(c.name, scope))};
      case Clause::Kind::CharSet:
        return {Atom::cls(c.negated ? ascii_complement(c.ranges) : c.ranges)};
      case Clause::Kind::Concat: {
        Alternative out;
        for (const auto& part : c.items) {
          Alternative sub = sequence(part, scope);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      }
      default:
        return {Atom::nt(fresh(c, scope))};
    }
  }

  static Alternative repeated(const Alternative& body, int times) {
    Alternative out;
    out.reserve(body.size() * times);
    for (int i = 0; i < times; ++i) out.insert(out.end(), body.begin(), body.end());
    return out;
  }

  int fresh(const Clause& c, Scope& scope) {
    int id = cfg_.add(scope.owner + "$" + std::to_string(++scope.counter), "",
                      print_clause(c));
    std::vector<Alternative> alts;
    switch (c.kind) {
      case Clause::Kind::Alt:
        for (const auto& choice : c.items) alts.push_back(sequence(choice, scope));
        break;
      case Clause::Kind::Star: {
        Alternative body = sequence(c.body(), scope);
        body.push_back(Atom::nt(id));
        alts = {{}, std::move(body)};
        break;
      }
      case Clause::Kind::Plus: {
        Alternative body = sequence(c.body(), scope);
        Alternative more = body;
        more.push_back(Atom::nt(id));
        alts = {std::move(body), std::move(more)};
        break;
      }
      case Clause::Kind::Opt:
        alts = {{}, sequence(c.body(), scope)};
        break;
      case Clause::Kind::RepeatExact:
        alts = {repeated(sequence(c.body(), scope), c.min)};
        break;
      case Clause::Kind::RepeatRange: {
        // One alternative per count: uniform alternative choice in the
        // generator then yields a uniform repetition count.
        Alternative body = sequence(c.body(), scope);
        for (int n = c.min; n <= c.max; ++n) alts.push_back(repeated(body, n));
        break;
      }
      default:
        alts = {sequence(c, scope)};
    }
    cfg_.nonterminals[id].alternatives = std::move(alts);
    return id;
  }

  CoreCFG& cfg_;
  const Registry& registry_;
  std::map<std::string, int> imported_;
};

}  // namespace

CoreCFG desugar(const Grammar& grammar, const Registry& registry) {
  CoreCFG cfg;
  cfg.name = grammar.name;
  cfg.start = Lowerer(cfg, registry).lower(grammar, "", "start");
  cfg.finalize();
  return cfg;
}

std::string print_cfg(const CoreCFG& cfg) {
  std::string out;
  for (size_t n = 0; n < cfg.nonterminals.size(); ++n) {
    const auto& nt = cfg.nonterminals[n];
    out += nt.name + " ::=";
    for (size_t a = 0; a < nt.alternatives.size(); ++a) {
      out += a ? "\n    |" : "";
      if (nt.alternatives[a].empty()) out += " ε";
      for (const auto& atom : nt.alternatives[a]) {
        out += " ";
        switch (atom.kind) {
          case Atom::Kind::Literal:
            out += quote(atom.literal);
            break;
          case Atom::Kind::Class:
            out += print_clause(Clause::charset(atom.ranges));
            break;
          case Atom::Kind::Nonterminal:
            out += cfg.nonterminals[atom.nonterminal].name;
            break;
        }
      }
    }
    out += "\n";
  }
  return out;
}

bool Registry::contains(std::string_view name) const {
  return languages_.find(name) != languages_.end();
}

const Language* Registry::find(std::string_view name) const {
  auto it = languages_.find(name);
  return it == languages_.end() ? nullptr : &it->second;
}

const Language& Registry::at(std::string_view name) const {
  if (const Language* lang = find(name)) return *lang;
  throw Error(Errc::UnresolvedLang,
              "unknown language type '" + std::string(name) + "'");
}

const Language& Registry::add(Grammar grammar) {
  auto cfg = std::make_shared<CoreCFG>(desugar(grammar, *this));
  std::string name = grammar.name;
  Language lang{std::make_shared<const Grammar>(std::move(grammar)),
                std::move(cfg)};
  return languages_[name] = std::move(lang);
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : languages_) out.push_back(name);
  return out;
}

}  // namespace flat::grammar
