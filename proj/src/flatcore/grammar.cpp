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

#include "flatcore/grammar.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace flat::grammar {

Clause Clause::terminal(Text literal) {
  Clause c;
  c.kind = Kind::Terminal;
  c.literal = std::move(literal);
  return c;
}

Clause Clause::nonterminal(std::string name) {
  Clause c;
  c.kind = Kind::Nonterminal;
  c.name = std::move(name);
  return c;
}

Clause Clause::concat(std::vector<Clause> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  Clause c;
  c.kind = Kind::Concat;
  c.items = std::move(parts);
  return c;
}

Clause Clause::alt(std::vector<Clause> choices) {
  if (choices.size() == 1) return std::move(choices.front());
  Clause c;
  c.kind = Kind::Alt;
  c.items = std::move(choices);
  return c;
}

static Clause unary(Clause::Kind kind, Clause body) {
  Clause c;
  c.kind = kind;
  c.items.push_back(std::move(body));
  return c;
}

Clause Clause::star(Clause body) { return unary(Kind::Star, std::move(body)); }
Clause Clause::plus(Clause body) { return unary(Kind::Plus, std::move(body)); }
Clause Clause::opt(Clause body) { return unary(Kind::Opt, std::move(body)); }

Clause Clause::repeat(Clause body, int k) {
  Clause c = unary(Kind::RepeatExact, std::move(body));
  c.min = k;
  return c;
}

Clause Clause::repeat(Clause body, int k1, int k2) {
  Clause c = unary(Kind::RepeatRange, std::move(body));
  c.min = k1;
  c.max = k2;
  return c;
}

Clause Clause::charset(std::vector<CharRange> ranges, bool negated) {
  Clause c;
  c.kind = Kind::CharSet;
  c.ranges = std::move(ranges);
  c.negated = negated;
  return c;
}

const Rule* Grammar::find(std::string_view rule) const {
  for (const auto& r : rules) {
    if (r.name == rule) return &r;
  }
  return nullptr;
}

namespace {

bool is_ident_start(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char32_t c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

int hex_value(char32_t c) {
  if (c >= '0' && c <= '9') return static_cast<int>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<int>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<int>(c - 'A' + 10);
  return -1;
}

class RuleParser {
 public:
  RuleParser(Text source, std::string name)
      : src_(std::move(source)), name_(std::move(name)) {}

  std::vector<Rule> parse_rules() {
    std::vector<Rule> rules;
    skip_space();
    while (!at_end()) {
      Rule rule;
      rule.line = line_;
      if (!is_ident_start(peek())) fail("expected rule name");
      rule.name = ident();
      skip_space();
      expect(':');
      rule.body = alternation();
      skip_space();
      expect(';');
      skip_space();
      rules.push_back(std::move(rule));
    }
    return rules;
  }

 private:
  [[noreturn]] void fail(const std::string& what,
                         Errc code = Errc::Syntax) const {
    std::string where = name_.empty() ? "grammar" : "grammar " + name_;
    throw Error(code, what + " (" + where + ", line " + std::to_string(line_) +
                          ", column " + std::to_string(col_) + ")");
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char32_t peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : U'\0';
  }

  char32_t get() {
    char32_t c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char32_t c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char32_t c) {
    if (at_end() || peek() != c) {
      std::string want(1, static_cast<char>(c));
      fail(at_end() ? "expected '" + want + "' before end of grammar"
                    : "expected '" + want + "'");
    }
    get();
  }

  std::string ident() {
    std::string out;
    while (!at_end() && is_ident_char(peek())) {
      out.push_back(static_cast<char>(get()));
    }
    return out;
  }

  int number() {
    if (!(peek() >= '0' && peek() <= '9')) fail("expected a repetition count");
    long value = 0;
    while (peek() >= '0' && peek() <= '9') {
      value = value * 10 + static_cast<long>(get() - '0');
      if (value > 1'000'000) fail("repetition count too large",
                                  Errc::BadRepetition);
    }
    return static_cast<int>(value);
  }

  char32_t escape() {
    if (at_end()) fail("unterminated escape");
    char32_t c = get();
    switch (c) {
      case '\\': return '\\';
      case '"': return '"';
      case '-': return '-';
      case ']': return ']';
      case '[': return '[';
      case '^': return '^';
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case 'x': {
        int hi = hex_value(peek());
        int lo = hex_value(peek(1));
        if (hi < 0 || lo < 0) fail("expected two hex digits after \\x");
        get();
        get();
        return static_cast<char32_t>(hi * 16 + lo);
      }
      default:
        fail("unknown escape sequence");
    }
  }

  Clause alternation() {
    std::vector<Clause> choices;
    choices.push_back(concatenation());
    skip_space();
    while (peek() == '|') {
      get();
      choices.push_back(concatenation());
      skip_space();
    }
    return Clause::alt(std::move(choices));
  }

  bool starts_atom() const {
    char32_t c = peek();
    return c == '"' || c == '(' || c == '[' || is_ident_start(c);
  }

  Clause concatenation() {
    std::vector<Clause> parts;
    skip_space();
    while (!at_end() && starts_atom()) {
      parts.push_back(postfix());
      skip_space();
    }
    if (parts.empty()) fail("empty alternative");
    return Clause::concat(std::move(parts));
  }

  Clause postfix() {
    Clause c = atom();
    for (;;) {
      char32_t p = peek();
      if (p == '*') {
        get();
        c = Clause::star(std::move(c));
      } else if (p == '+') {
        get();
        c = Clause::plus(std::move(c));
      } else if (p == '?') {
        get();
        c = Clause::opt(std::move(c));
      } else if (p == '{') {
        get();
        skip_space();
        int k1 = number();
        skip_space();
        if (peek() == ',') {
          get();
          skip_space();
          int k2 = number();
          skip_space();
          expect('}');
          if (k1 >= k2) fail("repetition {k1,k2} requires k1 < k2",
                             Errc::BadRepetition);
          if (k2 > kMaxRepetition) fail("repetition bound exceeds 1000",
                                        Errc::BadRepetition);
          c = Clause::repeat(std::move(c), k1, k2);
        } else {
          expect('}');
          if (k1 < 2) fail("repetition {k} requires k >= 2",
                           Errc::BadRepetition);
          if (k1 > kMaxRepetition) fail("repetition bound exceeds 1000",
                                        Errc::BadRepetition);
          c = Clause::repeat(std::move(c), k1);
        }
      } else {
        return c;
      }
    }
  }

  Clause atom() {
    char32_t c = peek();
    if (c == '"') {
      get();
      Text lit;
      for (;;) {
        if (at_end() || peek() == '\n') fail("unterminated string literal");
        char32_t d = get();
        if (d == '"') break;
        lit.push_back(d == '\\' ? escape() : d);
      }
      if (lit.empty()) fail("terminal literals must be nonempty");
      return Clause::terminal(std::move(lit));
    }
    if (c == '(') {
      get();
      Clause inner = alternation();
      skip_space();
      expect(')');
      return inner;
    }
    if (c == '[') return charset();
    return Clause::nonterminal(ident());
  }

  char32_t set_char() {
    if (at_end()) fail("unterminated character set");
    char32_t c = get();
    return c == '\\' ? escape() : c;
  }

  Clause charset() {
    get();  // '['
    bool negated = false;
    if (peek() == '^') {
      get();
      negated = true;
    }
    std::vector<CharRange> ranges;
    while (!at_end() && peek() != ']') {
      char32_t lo = set_char();
      char32_t hi = lo;
      if (peek() == '-' && peek(1) != ']' && pos_ + 1 < src_.size()) {
        get();
        hi = set_char();
        if (lo > hi) fail("character range lower bound exceeds upper bound",
                          Errc::BadCharRange);
      }
      ranges.push_back({lo, hi});
    }
    expect(']');
    if (ranges.empty()) fail("empty character set", Errc::BadCharRange);
    Clause set = Clause::charset(std::move(ranges), negated);
    if (negated) {
      bool any = false;
      for (char32_t c = 0; c <= kAsciiMax && !any; ++c) {
        bool member = false;
        for (const auto& r : set.ranges) member |= (c >= r.lo && c <= r.hi);
        any = !member;
      }
      if (!any) fail("negated character set is empty over ASCII",
                     Errc::BadCharRange);
    }
    return set;
  }

  Text src_;
  std::string name_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void collect_references(const Clause& c, std::vector<std::string>& out) {
  if (c.kind == Clause::Kind::Nonterminal) out.push_back(c.name);
  for (const auto& item : c.items) collect_references(item, out);
}

}  // namespace

Grammar parse_grammar(std::string_view source, const Registry& registry,
                      std::string name) {
  Grammar g;
  g.name = name;
  g.rules = RuleParser(from_utf8(source), name).parse_rules();

  std::string where = name.empty() ? "" : " in grammar " + name;
  std::set<std::string> defined;
  for (const auto& rule : g.rules) {
    if (!defined.insert(rule.name).second) {
      throw Error(Errc::DuplicateRule, "rule '" + rule.name +
                                           "' defined more than once" + where);
    }
  }
  if (!defined.count("start")) {
    throw Error(Errc::MissingStart, "no rule named 'start'" + where);
  }

  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& rule : g.rules) {
    std::vector<std::string> refs;
    collect_references(rule.body, refs);
    for (const auto& ref : refs) {
      if (defined.count(ref)) continue;
      if (registry.contains(ref)) {
        g.imports.insert(ref);
        continue;
      }
      throw Error(Errc::UndefinedNonterminal,
                  "rule '" + rule.name + "' refers to undefined nonterminal '" +
                      ref + "'" + where);
    }
    edges[rule.name] = std::move(refs);
  }

  std::set<std::string> reachable{"start"};
  std::vector<std::string> work{"start"};
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    for (const auto& m : edges[n]) {
      if (defined.count(m) && reachable.insert(m).second) work.push_back(m);
    }
  }
  for (const auto& rule : g.rules) {
    if (!reachable.count(rule.name)) {
      g.warnings.push_back("rule '" + rule.name +
                           "' is unreachable from 'start'" + where);
    }
  }
  return g;
}

namespace {

std::string set_char_text(char32_t c) {
  switch (c) {
    case '\\': return "\\\\";
    case ']': return "\\]";
    case '[': return "\\[";
    case '-': return "\\-";
    case '^': return "\\^";
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\r': return "\\r";
    default:
      if (c < 0x20 || c == 0x7F) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned>(c));
        return buf;
      }
      return to_utf8(TextView(&c, 1));
  }
}

// Precedence: 0 alternation, 1 concatenation, 2 postfix/atom.
int clause_level(const Clause& c) {
  switch (c.kind) {
    case Clause::Kind::Alt: return 0;
    case Clause::Kind::Concat: return 1;
    default: return 2;
  }
}

std::string print_at(const Clause& c, int level) {
  std::string out;
  switch (c.kind) {
    case Clause::Kind::Terminal:
      out = quote(c.literal);
      break;
    case Clause::Kind::Nonterminal:
      out = c.name;
      break;
    case Clause::Kind::CharSet:
      out = c.negated ? "[^" : "[";
      for (const auto& r : c.ranges) {
        out += set_char_text(r.lo);
        if (r.hi != r.lo) out += "-" + set_char_text(r.hi);
      }
      out += "]";
      break;
    case Clause::Kind::Concat:
      for (size_t i = 0; i < c.items.size(); ++i) {
        if (i) out += " ";
        out += print_at(c.items[i], 2);
      }
      break;
    case Clause::Kind::Alt:
      for (size_t i = 0; i < c.items.size(); ++i) {
        if (i) out += " | ";
        out += print_at(c.items[i], 1);
      }
      break;
    case Clause::Kind::Star:
      out = print_at(c.body(), 3) + "*";
      break;
    case Clause::Kind::Plus:
      out = print_at(c.body(), 3) + "+";
      break;
    case Clause::Kind::Opt:
      out = print_at(c.body(), 3) + "?";
      break;
    case Clause::Kind::RepeatExact:
      out = print_at(c.body(), 3) + "{" + std::to_string(c.min) + "}";
      break;
    case Clause::Kind::RepeatRange:
      out = print_at(c.body(), 3) + "{" + std::to_string(c.min) + "," +
            std::to_string(c.max) + "}";
      break;
  }
  // Postfix operands (level 3) need parentheses around anything that is not
  // a plain atom, so that `(a b)*` does not print as `a b*`.
  bool atomic = c.kind == Clause::Kind::Terminal ||
                c.kind == Clause::Kind::Nonterminal ||
                c.kind == Clause::Kind::CharSet;
  int own = clause_level(c);
  if ((level == 3 && !atomic) || own < level) return "(" + out + ")";
  return out;
}

}  // namespace

std::string print_clause(const Clause& clause) { return print_at(clause, 0); }

std::string print_grammar(const Grammar& grammar) {
  std::string out;
  for (const auto& rule : grammar.rules) {
    out += rule.name + ": " + print_clause(rule.body) + ";\n";
  }
  return out;
}

}  // namespace flat::grammar
