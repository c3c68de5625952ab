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

#include "flatcore/front.hpp"

#include <algorithm>
#include <set>

namespace flat::front {

using ast::Expr;
using ast::ExprPtr;
using ast::Stmt;
using ast::Type;
using ast::TypePtr;

namespace {

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> words = {
      "def",  "method", "lang", "requires", "ensures", "var",  "call",
      "assert", "return", "if",  "else",     "while",   "then", "true",
      "false", "and",    "or",   "not",      "in",      "Int",  "Bool",
      "String",
  };
  return words;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Str, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, digits, or canonical punctuation
  Text str;          // string literal contents
  size_t begin = 0;
  size_t end = 0;
};

bool ident_start(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char32_t c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}

class Lexer {
 public:
  Lexer(Text src, std::string file, bool allow_reserved)
      : src_(std::move(src)), file_(std::move(file)),
        allow_reserved_(allow_reserved) {
    line_starts_.push_back(0);
    for (size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  const Token& peek() {
    if (!cached_ || cache_pos_ != pos_) {
      cache_ = lex(pos_);
      cache_pos_ = pos_;
      cached_ = true;
    }
    return cache_;
  }

  Token next() {
    Token t = peek();
    pos_ = t.end;
    return t;
  }

  size_t mark() const { return pos_; }
  void reset(size_t pos) { pos_ = pos; }

  SourceLoc loc_at(size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    size_t line = static_cast<size_t>(it - line_starts_.begin());
    size_t col = offset - line_starts_[line - 1] + 1;
    return {file_, static_cast<int>(line), static_cast<int>(col)};
  }

  [[noreturn]] void fail(size_t offset, const std::string& message) const {
    throw Error(Errc::Syntax, message, loc_at(offset));
  }

  // Contents up to the `}` matching an already consumed `{`. Strings,
  // character sets and comments are skipped so braces inside them do not
  // count.
  Text raw_block() {
    size_t begin = pos_;
    size_t i = pos_;
    int depth = 1;
    while (i < src_.size()) {
      char32_t c = src_[i];
      if (c == '"' || c == '[') {
        char32_t close = c == '"' ? '"' : ']';
        ++i;
        while (i < src_.size() && src_[i] != close) {
          if (src_[i] == '\\') ++i;
          ++i;
        }
        if (i >= src_.size()) fail(begin, "unterminated grammar block");
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        pos_ = i + 1;
        return src_.substr(begin, i - begin);
      }
      ++i;
    }
    fail(begin, "unterminated grammar block");
  }

  // Contents up to the `]` matching an already consumed `[`.
  Text raw_brackets() {
    size_t begin = pos_;
    int depth = 1;
    for (size_t i = pos_; i < src_.size(); ++i) {
      if (src_[i] == '[') ++depth;
      if (src_[i] == ']' && --depth == 0) {
        pos_ = i + 1;
        return src_.substr(begin, i - begin);
      }
    }
    fail(begin, "unterminated '['");
  }

 private:
  void skip_space(size_t& i) const {
    while (i < src_.size()) {
      char32_t c = src_[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i;
      } else if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  Token lex(size_t i) const {
    skip_space(i);
    Token t;
    t.begin = i;
    if (i >= src_.size()) {
      t.kind = Tok::End;
      t.end = i;
      return t;
    }
    char32_t c = src_[i];
    if (ident_start(c) || (c == ast::kReservedPrefix && allow_reserved_)) {
      size_t j = i + 1;
      while (j < src_.size() && ident_char(src_[j])) ++j;
      if (c == ast::kReservedPrefix && j == i + 1) fail(i, "bad identifier");
      t.kind = Tok::Ident;
      t.text = to_utf8(src_.substr(i, j - i));
      t.end = j;
      return t;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src_.size() && src_[j] >= '0' && src_[j] <= '9') ++j;
      if (j < src_.size() && ident_start(src_[j])) fail(j, "bad number literal");
      t.kind = Tok::Int;
      t.text = to_utf8(src_.substr(i, j - i));
      t.end = j;
      return t;
    }
    if (c == '"') return string_literal(i);

    static const std::pair<std::u32string_view, const char*> kPuncts[] = {
        {U"->", "->"}, {U"==", "=="}, {U"!=", "!="}, {U"<=", "<="},
        {U">=", ">="}, {U"&&", "and"}, {U"||", "or"}, {U"∈", "in"},
        {U"∧", "and"}, {U"∨", "or"}, {U"¬", "not"},
        {U"≤", "<="}, {U"≥", ">="}, {U"≠", "!="},
        {U"→", "->"}, {U"!", "not"}, {U"(", "("}, {U")", ")"},
        {U"{", "{"}, {U"}", "}"}, {U"[", "["}, {U"]", "]"}, {U",", ","},
        {U";", ";"}, {U":", ":"}, {U"=", "="}, {U"+", "+"}, {U"-", "-"},
        {U"*", "*"}, {U"/", "/"}, {U"%", "%"}, {U"<", "<"}, {U">", ">"},
        {U"|", "|"},
    };
    for (const auto& [spelling, canonical] : kPuncts) {
      if (src_.compare(i, spelling.size(), spelling) == 0) {
        t.kind = Tok::Punct;
        t.text = canonical;
        t.end = i + spelling.size();
        // Word operators spelled symbolically behave like keywords.
        if (t.text == "and" || t.text == "or" || t.text == "not" ||
            t.text == "in") {
          t.kind = Tok::Ident;
        }
        return t;
      }
    }
    fail(i, "unexpected character " + quote(src_.substr(i, 1)));
  }

  Token string_literal(size_t i) const {
    Token t;
    t.kind = Tok::Str;
    t.begin = i;
    size_t j = i + 1;
    while (true) {
      if (j >= src_.size() || src_[j] == '\n') {
        fail(i, "unterminated string literal");
      }
      char32_t c = src_[j];
      if (c == '"') break;
      if (c != '\\') {
        t.str.push_back(c);
        ++j;
        continue;
      }
      if (j + 1 >= src_.size()) fail(j, "unterminated escape");
      char32_t e = src_[j + 1];
      j += 2;
      switch (e) {
        case '\\': t.str.push_back('\\'); break;
        case '"': t.str.push_back('"'); break;
        case 'n': t.str.push_back('\n'); break;
        case 't': t.str.push_back('\t'); break;
        case 'r': t.str.push_back('\r'); break;
        case 'x': {
          char32_t v = 0;
          for (int k = 0; k < 2; ++k, ++j) {
            char32_t h = j < src_.size() ? src_[j] : 0;
            int d = (h >= '0' && h <= '9')   ? int(h - '0')
                    : (h >= 'a' && h <= 'f') ? int(h - 'a' + 10)
                    : (h >= 'A' && h <= 'F') ? int(h - 'A' + 10)
                                             : -1;
            if (d < 0) fail(j, "\\x needs two hex digits");
            v = v * 16 + d;
          }
          t.str.push_back(v);
          break;
        }
        default:
          fail(j - 2, "unknown escape sequence");
      }
    }
    t.end = j + 1;
    return t;
  }

  Text src_;
  std::string file_;
  bool allow_reserved_;
  std::vector<size_t> line_starts_;
  size_t pos_ = 0;
  Token cache_;
  size_t cache_pos_ = 0;
  bool cached_ = false;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view source, const std::string& file,
         ParseOptions options)
      : lex_(from_utf8(source), file, options.allow_reserved) {}

  ast::Program program(const grammar::Registry& known) {
    grammar::Registry langs = known;
    std::set<std::string> names;
    ast::Program out;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      SourceLoc at = loc(t);
      ast::Def def;
      std::string name;
      if (is_word("def")) {
        auto fn = function_def();
        name = fn.name;
        def = std::move(fn);
      } else if (is_word("method")) {
        auto m = method_def();
        name = m.name;
        def = std::move(m);
      } else if (is_word("lang")) {
        auto lang = lang_def(langs);
        name = lang.name;
        def = std::move(lang);
      } else {
        fail(t, "expected 'def', 'method' or 'lang'");
      }
      if (!names.insert(name).second) {
        throw Error(Errc::DuplicateDefinition,
                    "'" + name + "' is defined more than once", at);
      }
      out.defs.push_back(std::move(def));
      accept(";");
    }
    return out;
  }

  ExprPtr whole_expr() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

  TypePtr whole_type() {
    TypePtr t = type();
    expect_end();
    return t;
  }

 private:
  Token peek() { return lex_.peek(); }
  Token next() { return lex_.next(); }
  SourceLoc loc(const Token& t) const { return lex_.loc_at(t.begin); }

  [[noreturn]] void fail(const Token& t, const std::string& message) {
    std::string found = t.kind == Tok::End   ? "end of input"
                        : t.kind == Tok::Str ? "string literal"
                                             : "'" + t.text + "'";
    lex_.fail(t.begin, message + ", found " + found);
  }

  bool is_punct(std::string_view p) {
    const Token& t = lex_.peek();
    return t.kind == Tok::Punct && t.text == p;
  }
  bool is_word(std::string_view w) {
    const Token& t = lex_.peek();
    return t.kind == Tok::Ident && t.text == w;
  }
  bool accept(std::string_view p) {
    if (is_punct(p) || is_word(p)) {
      next();
      return true;
    }
    return false;
  }
  Token expect(std::string_view p) {
    if (!is_punct(p) && !is_word(p)) fail(peek(), "expected '" + std::string(p) + "'");
    return next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "expected end of input");
  }

  std::string identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) {
      fail(t, std::string("expected ") + what);
    }
    return next().text;
  }

  // -- definitions ---------------------------------------------------------

  std::vector<ast::Param> params() {
    std::vector<ast::Param> out;
    expect("(");
    if (!is_punct(")")) {
      do {
        ast::Param p;
        p.loc = loc(peek());
        p.name = identifier("a parameter name");
        expect(":");
        p.type = type();
        out.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    return out;
  }

  ast::FunDef function_def() {
    ast::FunDef fn;
    fn.loc = loc(next());
    fn.name = identifier("a function name");
    fn.params = params();
    expect(":");
    fn.ret = type();
    expect("=");
    in_function_ = true;
    fn.body = expr();
    in_function_ = false;
    return fn;
  }

  ast::MethodDef method_def() {
    ast::MethodDef m;
    m.loc = loc(next());
    m.name = identifier("a method name");
    m.params = params();
    expect(":");
    m.ret = type();
    while (is_word("requires") || is_word("ensures")) {
      ast::Contract c;
      Token kw = next();
      c.kind = kw.text == "requires" ? ast::Contract::Kind::Requires
                                     : ast::Contract::Kind::Ensures;
      c.loc = loc(kw);
      c.pred = expr();
      accept(";");
      m.contracts.push_back(std::move(c));
    }
    m.body = block();
    return m;
  }

  ast::LangDef lang_def(grammar::Registry& langs) {
    ast::LangDef lang;
    lang.loc = loc(next());
    lang.name = identifier("a language name");
    expect("=");
    Token open = expect("{");
    Text body = lex_.raw_block();
    lang.source = to_utf8(body);
    try {
      grammar::Grammar g = grammar::parse_grammar(lang.source, langs, lang.name);
      lang.grammar = langs.add(std::move(g)).grammar;
    } catch (const Error& e) {
      throw Error(e.code(), "in lang " + lang.name + ": " + e.what(),
                  loc(open));
    }
    return lang;
  }

  // -- types ---------------------------------------------------------------

  TypePtr type() {
    const Token& t = peek();
    SourceLoc at = loc(t);
    if (t.kind == Tok::Ident) {
      std::string word = t.text;
      if (word == "Int") return next(), Type::of(ast::SimpleType::integer(), at);
      if (word == "Bool") return next(), Type::of(ast::SimpleType::boolean(), at);
      if (word == "String") return next(), Type::of(ast::SimpleType::string(), at);
      return Type::lang(identifier("a type"), at);
    }
    if (is_punct("{")) {
      next();
      std::string binder;
      size_t m = lex_.mark();
      if (peek().kind == Tok::Ident && !keywords().count(peek().text)) {
        std::string name = next().text;
        if (accept(":")) {
          binder = name;
        } else {
          lex_.reset(m);
        }
      }
      TypePtr base = type();
      expect("|");
      ExprPtr pred = expr();
      expect("}");
      return Type::refine(binder, base, pred, at);
    }
    if (is_punct("(")) {
      next();
      std::vector<ast::SimpleType> ps;
      if (!is_punct(")")) {
        do {
          ps.push_back(simple_type());
        } while (accept(","));
      }
      expect(")");
      expect("->");
      ast::SimpleType ret = simple_type();
      return Type::of(ast::SimpleType::fun(std::move(ps), std::move(ret)), at);
    }
    fail(t, "expected a type");
  }

  ast::SimpleType simple_type() {
    const Token& t = peek();
    TypePtr ty = type();
    if (ty->kind != Type::Kind::Simple) {
      fail(t, "function types are built from Int, Bool, String and function types");
    }
    return ty->simple;
  }

  // -- statements ----------------------------------------------------------

  std::vector<Stmt> block() {
    expect("{");
    std::vector<Stmt> out;
    while (!is_punct("}")) {
      if (peek().kind == Tok::End) fail(peek(), "expected '}'");
      out.push_back(statement());
    }
    next();
    return out;
  }

  Stmt statement() {
    const Token& t = peek();
    Stmt s;
    s.loc = loc(t);
    if (is_word("var")) {
      next();
      s.name = identifier("a variable name");
      if (accept(":")) s.type = type();
      if (accept("=")) {
        if (is_word("call")) {
          if (s.type) fail(peek(), "a call result takes the callee's return type; expected an expression");
          next();
          s.kind = Stmt::Kind::Call;
          s.method = identifier("a method name");
          expect("(");
          s.args = arguments();
        } else {
          s.kind = Stmt::Kind::DeclAssign;
          s.expr = expr();
        }
      } else {
        if (!s.type) fail(peek(), "expected ':' or '='");
        s.kind = Stmt::Kind::Decl;
      }
      expect(";");
      return s;
    }
    if (is_word("assert") || is_word("return")) {
      s.kind = next().text == "assert" ? Stmt::Kind::Assert : Stmt::Kind::Return;
      s.expr = expr();
      expect(";");
      return s;
    }
    if (is_word("if")) {
      next();
      s.kind = Stmt::Kind::If;
      s.expr = expr();
      s.body = block();
      if (accept("else")) {
        if (is_word("if")) {
          s.orelse.push_back(statement());
        } else {
          s.orelse = block();
        }
      }
      accept(";");
      return s;
    }
    if (is_word("while")) {
      next();
      s.kind = Stmt::Kind::While;
      s.expr = expr();
      s.body = block();
      accept(";");
      return s;
    }
    if (t.kind == Tok::Ident && !keywords().count(t.text)) {
      s.kind = Stmt::Kind::Assign;
      s.name = next().text;
      expect("=");
      if (is_word("call")) fail(peek(), "method calls must bind a fresh variable: var y = call m(...)");
      s.expr = expr();
      expect(";");
      return s;
    }
    fail(t, "expected a statement");
  }

  // After the opening parenthesis.
  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> out;
    if (!is_punct(")")) {
      do {
        out.push_back(expr());
      } while (accept(","));
    }
    expect(")");
    return out;
  }

  // -- expressions ---------------------------------------------------------

  ExprPtr expr() { return disjunction(); }

  ExprPtr disjunction() {
    ExprPtr left = conjunction();
    while (is_word("or")) {
      SourceLoc at = loc(next());
      left = Expr::call("or", {left, conjunction()}, at);
    }
    return left;
  }

  ExprPtr conjunction() {
    ExprPtr left = negation();
    while (is_word("and")) {
      SourceLoc at = loc(next());
      left = Expr::call("and", {left, negation()}, at);
    }
    return left;
  }

  ExprPtr negation() {
    if (is_word("not")) {
      SourceLoc at = loc(next());
      return Expr::call("not", {negation()}, at);
    }
    return comparison();
  }

  static const char* comparison_builtin(const Token& t) {
    if (t.kind != Tok::Punct) return nullptr;
    if (t.text == "==") return "eq";
    if (t.text == "!=") return "ne";
    if (t.text == "<") return "lt";
    if (t.text == "<=") return "le";
    if (t.text == ">") return "gt";
    if (t.text == ">=") return "ge";
    return nullptr;
  }

  ExprPtr comparison() {
    ExprPtr left = additive();
    bool done = false;
    if (const char* op = comparison_builtin(peek())) {
      SourceLoc at = loc(next());
      left = Expr::call(op, {left, additive()}, at);
      done = true;
    } else if (is_word("in")) {
      SourceLoc at = loc(next());
      std::string lang = identifier("a language name");
      left = Expr::in_lang(left, lang, at);
      done = true;
    }
    if (done && (comparison_builtin(peek()) || is_word("in"))) {
      fail(peek(), "comparisons do not chain; add parentheses");
    }
    return left;
  }

  ExprPtr additive() {
    ExprPtr left = multiplicative();
    while (is_punct("+") || is_punct("-")) {
      Token op = next();
      left = Expr::call(op.text == "+" ? "add" : "sub", {left, multiplicative()},
                        loc(op));
    }
    return left;
  }

  ExprPtr multiplicative() {
    ExprPtr left = unary();
    while (is_punct("*") || is_punct("/") || is_punct("%")) {
      Token op = next();
      const char* name = op.text == "*" ? "mul" : op.text == "/" ? "div" : "mod";
      left = Expr::call(name, {left, unary()}, loc(op));
    }
    return left;
  }

  ExprPtr unary() {
    if (is_punct("-")) {
      Token op = next();
      if (peek().kind == Tok::Int) {
        Token digits = next();
        return postfix(Expr::int_lit(-ast::BigInt(digits.text), loc(op)));
      }
      return Expr::call("neg", {unary()}, loc(op));
    }
    return postfix(primary());
  }

  ExprPtr postfix(ExprPtr e) {
    while (true) {
      if (is_punct("(")) {
        SourceLoc at = loc(next());
        e = Expr::apply(e, arguments(), at);
      } else if (is_punct("[")) {
        Token open = next();
        std::string text = to_utf8(lex_.raw_brackets());
        text.erase(0, text.find_first_not_of(" \t\n\r"));
        text.erase(text.find_last_not_of(" \t\n\r") + 1);
        xpath::XPath path;
        try {
          path = xpath::parse_xpath(text);
        } catch (const Error& err) {
          throw Error(err.code(), err.what(), loc(open));
        }
        e = Expr::select(e, std::move(path), loc(open));
      } else {
        return e;
      }
    }
  }

  // `( ident, ... ) ->` ahead?
  bool lambda_ahead() {
    size_t m = lex_.mark();
    bool ok = false;
    if (accept("(")) {
      ok = true;
      if (!is_punct(")")) {
        do {
          if (peek().kind != Tok::Ident || keywords().count(peek().text)) {
            ok = false;
            break;
          }
          next();
        } while (accept(","));
      }
      ok = ok && accept(")") && is_punct("->");
    }
    lex_.reset(m);
    return ok;
  }

  ExprPtr primary() {
    const Token& t = peek();
    SourceLoc at = loc(t);
    switch (t.kind) {
      case Tok::Int:
        return Expr::int_lit(ast::BigInt(next().text), at);
      case Tok::Str:
        return Expr::str_lit(next().str, at);
      case Tok::End:
        fail(t, "expected an expression");
      default:
        break;
    }
    if (is_punct("(")) {
      if (lambda_ahead()) {
        next();
        std::vector<std::string> ps;
        if (!is_punct(")")) {
          do {
            ps.push_back(next().text);
          } while (accept(","));
        }
        expect(")");
        expect("->");
        return Expr::lambda(std::move(ps), expr(), at);
      }
      next();
      ExprPtr inner = expr();
      expect(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        return Expr::bool_lit(next().text == "true", at);
      }
      if (t.text == "if") {
        next();
        ExprPtr c = expr();
        expect("then");
        ExprPtr a = expr();
        expect("else");
        ExprPtr b = expr();
        return Expr::if_then_else(c, a, b, at);
      }
      if (t.text == "call") {
        fail(t, in_function_
                    ? "function bodies are expressions; methods cannot be called here"
                    : "method calls are statements: var y = call m(...)");
      }
      if (!keywords().count(t.text)) return Expr::var(next().text, at);
    }
    fail(t, "expected an expression");
  }

  Lexer lex_;
  bool in_function_ = false;
};

// ---------------------------------------------------------------------------
// Resolution

class Resolver {
 public:
  Resolver(const grammar::Registry& library, const interp::Builtins& builtins)
      : builtins_(builtins) {
    out_.registry = library;
  }

  ResolvedProgram run(ast::Program program) {
    collect(program);
    for (auto& def : program.defs) {
      if (auto* fn = std::get_if<ast::FunDef>(&def)) function(*fn);
      if (auto* m = std::get_if<ast::MethodDef>(&def)) method(*m);
    }
    out_.program = std::move(program);
    return std::move(out_);
  }

 private:
  using Scope = std::map<std::string, TypePtr>;

  // -- top level -----------------------------------------------------------

  void collect(ast::Program& program) {
    std::set<std::string> seen;
    for (auto& def : program.defs) {
      std::string name;
      SourceLoc at;
      std::visit([&](auto& d) { name = d.name; at = d.loc; }, def);
      if (!seen.insert(name).second) {
        throw Error(Errc::DuplicateDefinition,
                    "'" + name + "' is defined more than once", at);
      }
      if (builtins_.contains(name)) {
        throw Error(Errc::DuplicateDefinition,
                    "'" + name + "' is the name of a builtin function", at);
      }
      if (auto* lang = std::get_if<ast::LangDef>(&def)) {
        try {
          grammar::Grammar g =
              lang->grammar ? *lang->grammar
                            : grammar::parse_grammar(lang->source, out_.registry,
                                                     lang->name);
          lang->grammar = out_.registry.add(std::move(g)).grammar;
        } catch (const Error& e) {
          if (e.loc().known()) throw;
          throw Error(e.code(), "in lang " + lang->name + ": " + e.what(),
                      lang->loc);
        }
      } else if (auto* fn = std::get_if<ast::FunDef>(&def)) {
        functions_[fn->name] = fn;
      } else if (auto* m = std::get_if<ast::MethodDef>(&def)) {
        methods_[m->name] = m;
      }
    }
    // Signatures may mention any language of the program.
    for (auto& def : program.defs) {
      if (auto* fn = std::get_if<ast::FunDef>(&def)) {
        for (auto& p : fn->params) p.type = resolve_type(p.type);
        fn->ret = resolve_type(fn->ret);
      } else if (auto* m = std::get_if<ast::MethodDef>(&def)) {
        for (auto& p : m->params) p.type = resolve_type(p.type);
        m->ret = resolve_type(m->ret);
      }
    }
  }

  void function(ast::FunDef& fn) {
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : fn.params) bind(p.name, p.type, p.loc);
    fn.body = resolve_expr(fn.body);
    scopes_.clear();
  }

  void method(ast::MethodDef& m) {
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : m.params) bind(p.name, p.type, p.loc);

    std::string ret = return_binder(m);
    std::vector<ExprPtr> pres, posts;
    std::vector<std::string> pre_texts, post_texts;
    for (auto& c : m.contracts) {
      bool post = c.kind == ast::Contract::Kind::Ensures;
      c.pred = resolve_contract(m, c, ret);
      (post ? posts : pres).push_back(contract_body(m, c, ret));
      (post ? post_texts : pre_texts).push_back(ast::print_expr(*c.pred));
    }

    block(m.body);
    scopes_.clear();

    ast::MethodMeta meta;
    meta.name = m.name;
    meta.params = m.params;
    meta.ret = m.ret;
    meta.loc = m.loc;
    std::vector<std::string> names;
    for (const auto& p : m.params) names.push_back(p.name);
    meta.pre = Expr::lambda(names, ast::conjoin(pres));
    names.push_back(ret);
    meta.post = Expr::lambda(names, ast::conjoin(posts));
    meta.pre_text = join(pre_texts);
    meta.post_text = join(post_texts);
    out_.meta[m.name] = std::move(meta);
  }

  static std::string join(const std::vector<std::string>& parts) {
    if (parts.empty()) return "true";
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += " and ";
      out += p;
    }
    return out;
  }

  size_t contract_arity(const ast::MethodDef& m, const ast::Contract& c) const {
    return m.params.size() + (c.kind == ast::Contract::Kind::Ensures ? 1 : 0);
  }

  // Lambda parameters take the signature's types; a bare expression sees
  // the parameters and, in `ensures`, the return binder.
  ExprPtr resolve_contract(const ast::MethodDef& m, const ast::Contract& c,
                           const std::string& ret) {
    std::vector<TypePtr> types;
    for (const auto& p : m.params) types.push_back(p.type);
    bool post = c.kind == ast::Contract::Kind::Ensures;
    if (post) types.push_back(m.ret);
    if (c.pred->kind == Expr::Kind::Lambda) {
      if (c.pred->params.size() != contract_arity(m, c)) {
        throw Error(Errc::Syntax,
                    std::string(post ? "ensures" : "requires") + " of " +
                        m.name + " must take " +
                        std::to_string(contract_arity(m, c)) + " parameters",
                    c.loc);
      }
      return resolve_lambda(c.pred, types);
    }
    scopes_.emplace_back();
    if (post) scopes_.back()[ret] = m.ret;
    ExprPtr out = resolve_expr(c.pred);
    scopes_.pop_back();
    return out;
  }

  // The contract as an expression over the method's parameter names and
  // `ret`.
  ExprPtr contract_body(const ast::MethodDef& m, const ast::Contract& c,
                        const std::string& ret) {
    if (c.pred->kind != Expr::Kind::Lambda) return c.pred;
    std::vector<std::string> targets;
    for (const auto& p : m.params) targets.push_back(p.name);
    if (c.kind == ast::Contract::Kind::Ensures) targets.push_back(ret);
    const auto& from = c.pred->params;
    ExprPtr body = c.pred->kids[0];
    // Simultaneous renaming through temporaries.
    std::set<std::string> taken = ast::free_vars(*body);
    taken.insert(from.begin(), from.end());
    taken.insert(targets.begin(), targets.end());
    std::vector<std::string> temps;
    for (const auto& f : from) {
      temps.push_back(ast::fresh_name(f + "_", taken));
      taken.insert(temps.back());
    }
    for (size_t i = 0; i < from.size(); ++i) {
      if (from[i] != ast::kWildcard) {
        body = ast::substitute(body, from[i], Expr::var(temps[i]));
      }
    }
    for (size_t i = 0; i < from.size(); ++i) {
      body = ast::substitute(body, temps[i], Expr::var(targets[i]));
    }
    return body;
  }

  // -- scopes --------------------------------------------------------------

  const TypePtr* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void check_fresh(const std::string& name, const SourceLoc& at) {
    if (name == ast::kWildcard) {
      throw Error(Errc::DuplicateDefinition,
                  "'_' cannot name a variable", at);
    }
    if (builtins_.contains(name)) {
      throw Error(Errc::DuplicateDefinition,
                  "'" + name + "' is the name of a builtin function", at);
    }
    if (functions_.count(name) || methods_.count(name) ||
        out_.registry.contains(name)) {
      throw Error(Errc::DuplicateDefinition,
                  "'" + name + "' is already a definition name", at);
    }
    if (lookup(name)) {
      throw Error(Errc::DuplicateDefinition,
                  "variable '" + name + "' is already declared", at);
    }
  }

  void bind(const std::string& name, TypePtr type, const SourceLoc& at) {
    check_fresh(name, at);
    scopes_.back()[name] = std::move(type);
  }

  // -- types ---------------------------------------------------------------

  TypePtr resolve_type(const TypePtr& t) {
    switch (t->kind) {
      case Type::Kind::Simple:
        return t;
      case Type::Kind::Lang:
        if (!out_.registry.contains(t->name)) {
          throw Error(Errc::UnresolvedName,
                      "unknown language type '" + t->name + "'", t->loc);
        }
        return t;
      case Type::Kind::Refine:
        break;
    }
    TypePtr base = resolve_type(t->base);
    std::string binder = t->var;
    if (binder.empty()) {
      const Type* cur = base.get();
      while (binder.empty() && cur->kind == Type::Kind::Refine) {
        binder = cur->var;
        cur = cur->base.get();
      }
    }
    scopes_.emplace_back();
    if (!binder.empty() && binder != ast::kWildcard) {
      // A refinement binder may shadow outer names.
      scopes_.back()[binder] = base;
    }
    ExprPtr pred = resolve_expr(t->pred);
    scopes_.pop_back();
    return Type::refine(t->var, base, pred, t->loc);
  }

  // -- expressions ---------------------------------------------------------

  std::string static_lang(const Expr& e) const {
    if (e.kind != Expr::Kind::Var) return "";
    const TypePtr* t = lookup(e.name);
    return t && *t ? (*t)->language() : "";
  }

  TypePtr static_type(const Expr& e) const {
    if (e.kind != Expr::Kind::Var) return nullptr;
    const TypePtr* t = lookup(e.name);
    return t ? *t : nullptr;
  }

  ExprPtr resolve_lambda(const ExprPtr& e, const std::vector<TypePtr>& types) {
    scopes_.emplace_back();
    for (size_t i = 0; i < e->params.size(); ++i) {
      const std::string& p = e->params[i];
      if (p == ast::kWildcard) continue;
      if (builtins_.contains(p)) {
        throw Error(Errc::DuplicateDefinition,
                    "'" + p + "' is the name of a builtin function", e->loc);
      }
      scopes_.back()[p] = i < types.size() ? types[i] : nullptr;
    }
    ExprPtr body = resolve_expr(e->kids[0]);
    scopes_.pop_back();
    return Expr::lambda(e->params, body, e->loc);
  }

  ExprPtr resolve_expr(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::Int:
      case Expr::Kind::Bool:
      case Expr::Kind::Str:
        return e;
      case Expr::Kind::Var:
        if (e->name == ast::kWildcard) {
          throw Error(Errc::UnresolvedName, "'_' cannot be referenced", e->loc);
        }
        if (lookup(e->name) || functions_.count(e->name) ||
            builtins_.contains(e->name)) {
          return e;
        }
        if (methods_.count(e->name)) {
          throw Error(Errc::UnresolvedName,
                      "method '" + e->name +
                          "' can only be invoked by a call statement",
                      e->loc);
        }
        throw Error(Errc::UnresolvedName, "unknown name '" + e->name + "'",
                    e->loc);
      case Expr::Kind::Lambda:
        return resolve_lambda(e, {});
      case Expr::Kind::Apply: {
        std::vector<ExprPtr> args;
        for (size_t i = 0; i < e->arity(); ++i) {
          args.push_back(resolve_expr(e->kids[i + 1]));
        }
        ExprPtr callee;
        if (e->kids[0]->kind == Expr::Kind::Lambda) {
          // An applied lambda sees the static types of its arguments.
          std::vector<TypePtr> types;
          for (const auto& a : args) types.push_back(static_type(*a));
          callee = resolve_lambda(e->kids[0], types);
        } else {
          callee = resolve_expr(e->kids[0]);
        }
        return Expr::apply(callee, std::move(args), e->loc);
      }
      case Expr::Kind::If:
        return Expr::if_then_else(resolve_expr(e->kids[0]),
                                  resolve_expr(e->kids[1]),
                                  resolve_expr(e->kids[2]), e->loc);
      case Expr::Kind::InLang:
        if (!out_.registry.contains(e->name)) {
          throw Error(Errc::UnresolvedName,
                      "unknown language type '" + e->name + "'", e->loc);
        }
        return Expr::in_lang(resolve_expr(e->kids[0]), e->name, e->loc);
      case Expr::Kind::Select: {
        ExprPtr subject = resolve_expr(e->kids[0]);
        xpath::XPath path = e->path;
        path.lang = static_lang(*subject);
        if (!path.lang.empty()) {
          try {
            xpath::check_labels(path, *out_.registry.at(path.lang).cfg);
          } catch (const Error& err) {
            throw Error(err.code(), err.what(), e->loc);
          }
        }
        return Expr::select(subject, std::move(path), e->loc);
      }
    }
    return e;
  }

  // -- statements ----------------------------------------------------------

  void block(std::vector<Stmt>& body) {
    for (auto& s : body) statement(s);
  }

  void nested(std::vector<Stmt>& body) {
    scopes_.emplace_back();
    block(body);
    scopes_.pop_back();
  }

  void statement(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Decl:
        s.type = resolve_type(s.type);
        bind(s.name, s.type, s.loc);
        break;
      case Stmt::Kind::Assign:
        if (!lookup(s.name)) {
          throw Error(Errc::UnresolvedName,
                      "assignment to undeclared variable '" + s.name + "'",
                      s.loc);
        }
        s.expr = resolve_expr(s.expr);
        break;
      case Stmt::Kind::DeclAssign:
        s.expr = resolve_expr(s.expr);
        if (s.type) {
          s.type = resolve_type(s.type);
        } else if (!s.inferred) {
          s.inferred = static_type(*s.expr);
        }
        bind(s.name, s.bound_type(), s.loc);
        break;
      case Stmt::Kind::Call: {
        auto it = methods_.find(s.method);
        if (it == methods_.end()) {
          throw Error(Errc::UnresolvedName,
                      "unknown method '" + s.method + "'", s.loc);
        }
        for (auto& a : s.args) a = resolve_expr(a);
        bind(s.name, it->second->ret, s.loc);
        break;
      }
      case Stmt::Kind::Assert:
      case Stmt::Kind::Return:
        s.expr = resolve_expr(s.expr);
        break;
      case Stmt::Kind::If:
        s.expr = resolve_expr(s.expr);
        nested(s.body);
        nested(s.orelse);
        break;
      case Stmt::Kind::While:
        s.expr = resolve_expr(s.expr);
        nested(s.body);
        break;
    }
  }

  const interp::Builtins& builtins_;
  ResolvedProgram out_;
  std::map<std::string, const ast::FunDef*> functions_;
  std::map<std::string, const ast::MethodDef*> methods_;
  std::vector<Scope> scopes_;
};

}  // namespace

ast::Program parse_program(std::string_view source, const std::string& file,
                           const grammar::Registry& known,
                           ParseOptions options) {
  return Parser(source, file, options).program(known);
}

ast::ExprPtr parse_expr(std::string_view source, ParseOptions options) {
  return Parser(source, "", options).whole_expr();
}

ast::TypePtr parse_type(std::string_view source, ParseOptions options) {
  return Parser(source, "", options).whole_type();
}

ResolvedProgram resolve(ast::Program program, const grammar::Registry& library,
                        const interp::Builtins& builtins) {
  return Resolver(library, builtins).run(std::move(program));
}

std::string return_binder(const ast::MethodDef& m) {
  std::set<std::string> taken;
  for (const auto& p : m.params) taken.insert(p.name);
  return ast::fresh_name("ret", taken);
}

}  // namespace flat::front
