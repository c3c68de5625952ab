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

#include "flatcore/builtins.hpp"

namespace flat::interp {

using ast::SimpleType;

namespace smt {

namespace {

// Index as size_t when 0 <= i <= limit.
bool in_range(const BigInt& i, size_t limit, size_t& out) {
  if (i < 0 || i > limit) return false;
  out = static_cast<size_t>(i);
  return true;
}

}  // namespace

BigInt length(const Text& s) { return BigInt(s.size()); }

Text at(const Text& s, const BigInt& i) {
  size_t k;
  if (!in_range(i, s.size(), k) || k == s.size()) return {};
  return Text(1, s[k]);
}

Text substr(const Text& s, const BigInt& i, const BigInt& n) {
  size_t k;
  if (n <= 0 || !in_range(i, s.size(), k) || k == s.size()) return {};
  size_t rest = s.size() - k;
  size_t len = n >= rest ? rest : static_cast<size_t>(n);
  return s.substr(k, len);
}

BigInt indexof(const Text& s, const Text& t, const BigInt& i) {
  size_t k;
  if (!in_range(i, s.size(), k)) return -1;
  size_t found = s.find(t, k);
  return found == Text::npos ? BigInt(-1) : BigInt(found);
}

bool contains(const Text& s, const Text& t) { return s.find(t) != Text::npos; }

bool prefixof(const Text& pre, const Text& s) {
  return pre.size() <= s.size() && s.compare(0, pre.size(), pre) == 0;
}

bool suffixof(const Text& suf, const Text& s) {
  return suf.size() <= s.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

Text replace(const Text& s, const Text& t, const Text& u) {
  if (t.empty()) return u + s;
  size_t found = s.find(t);
  if (found == Text::npos) return s;
  return s.substr(0, found) + u + s.substr(found + t.size());
}

BigInt str_to_int(const Text& s) {
  if (s.empty()) return -1;
  BigInt out = 0;
  for (char32_t c : s) {
    if (c < U'0' || c > U'9') return -1;
    out = out * 10 + static_cast<int>(c - U'0');
  }
  return out;
}

Text int_to_str(const BigInt& n) {
  if (n < 0) return {};
  std::string digits = n.str();
  return Text(digits.begin(), digits.end());
}

}  // namespace smt

BigInt euclid_mod(const BigInt& a, const BigInt& b) {
  if (b == 0) throw RuntimeError(RuntimeKind::DivisionByZero, "division by zero");
  BigInt r = a % b;  // sign follows a
  if (r < 0) r += b < 0 ? BigInt(-b) : b;
  return r;
}

BigInt euclid_div(const BigInt& a, const BigInt& b) {
  BigInt r = euclid_mod(a, b);
  return (a - r) / b;
}

namespace {

SimpleType I() { return SimpleType::integer(); }
SimpleType B() { return SimpleType::boolean(); }
SimpleType S() { return SimpleType::string(); }

using Args = std::vector<Value>;

Builtins make_standard() {
  Builtins lib;
  auto arith = [&lib](std::string name,
                      std::function<BigInt(const BigInt&, const BigInt&)> f) {
    lib.add({name, {I(), I()}, I(), false, [f](const Args& a) {
               return Value::integer(f(a[0].as_int(), a[1].as_int()));
             }});
  };
  arith("add", [](const BigInt& a, const BigInt& b) { return BigInt(a + b); });
  arith("sub", [](const BigInt& a, const BigInt& b) { return BigInt(a - b); });
  arith("mul", [](const BigInt& a, const BigInt& b) { return BigInt(a * b); });
  arith("div", euclid_div);
  arith("mod", euclid_mod);
  lib.add({"neg", {I()}, I(), false,
           [](const Args& a) { return Value::integer(-a[0].as_int()); }});

  auto compare = [&lib](std::string name,
                        std::function<bool(const BigInt&, const BigInt&)> f) {
    lib.add({name, {I(), I()}, B(), false, [f](const Args& a) {
               return Value::boolean(f(a[0].as_int(), a[1].as_int()));
             }});
  };
  compare("lt", [](const BigInt& a, const BigInt& b) { return a < b; });
  compare("le", [](const BigInt& a, const BigInt& b) { return a <= b; });
  compare("gt", [](const BigInt& a, const BigInt& b) { return a > b; });
  compare("ge", [](const BigInt& a, const BigInt& b) { return a >= b; });

  lib.add({"eq", {}, B(), true,
           [](const Args& a) { return Value::boolean(a[0] == a[1]); }});
  lib.add({"ne", {}, B(), true,
           [](const Args& a) { return Value::boolean(!(a[0] == a[1])); }});

  // and/or short-circuit in the evaluator; these bodies serve first-class
  // uses only.
  lib.add({"and", {B(), B()}, B(), false, [](const Args& a) {
             return Value::boolean(a[0].as_bool() && a[1].as_bool());
           }});
  lib.add({"or", {B(), B()}, B(), false, [](const Args& a) {
             return Value::boolean(a[0].as_bool() || a[1].as_bool());
           }});
  lib.add({"not", {B()}, B(), false,
           [](const Args& a) { return Value::boolean(!a[0].as_bool()); }});

  lib.add({"length", {S()}, I(), false, [](const Args& a) {
             return Value::integer(smt::length(a[0].as_str()));
           }});
  lib.add({"concat", {S(), S()}, S(), false, [](const Args& a) {
             return Value::string(a[0].as_str() + a[1].as_str());
           }});
  lib.add({"at", {S(), I()}, S(), false, [](const Args& a) {
             return Value::string(smt::at(a[0].as_str(), a[1].as_int()));
           }});
  lib.add({"substr", {S(), I(), I()}, S(), false, [](const Args& a) {
             return Value::string(
                 smt::substr(a[0].as_str(), a[1].as_int(), a[2].as_int()));
           }});
  lib.add({"indexof", {S(), S(), I()}, I(), false, [](const Args& a) {
             return Value::integer(
                 smt::indexof(a[0].as_str(), a[1].as_str(), a[2].as_int()));
           }});
  lib.add({"contains", {S(), S()}, B(), false, [](const Args& a) {
             return Value::boolean(smt::contains(a[0].as_str(), a[1].as_str()));
           }});
  lib.add({"prefixof", {S(), S()}, B(), false, [](const Args& a) {
             return Value::boolean(smt::prefixof(a[0].as_str(), a[1].as_str()));
           }});
  lib.add({"suffixof", {S(), S()}, B(), false, [](const Args& a) {
             return Value::boolean(smt::suffixof(a[0].as_str(), a[1].as_str()));
           }});
  lib.add({"startswith", {S(), S()}, B(), false, [](const Args& a) {
             return Value::boolean(smt::prefixof(a[1].as_str(), a[0].as_str()));
           }});
  lib.add({"endswith", {S(), S()}, B(), false, [](const Args& a) {
             return Value::boolean(smt::suffixof(a[1].as_str(), a[0].as_str()));
           }});
  lib.add({"replace", {S(), S(), S()}, S(), false, [](const Args& a) {
             return Value::string(
                 smt::replace(a[0].as_str(), a[1].as_str(), a[2].as_str()));
           }});
  lib.add({"str_to_int", {S()}, I(), false, [](const Args& a) {
             return Value::integer(smt::str_to_int(a[0].as_str()));
           }});
  lib.add({"int_to_str", {I()}, S(), false, [](const Args& a) {
             return Value::string(smt::int_to_str(a[0].as_int()));
           }});
  return lib;
}

}  // namespace

const Builtins& Builtins::standard() {
  static const Builtins lib = make_standard();
  return lib;
}

const Builtin* Builtins::find(std::string_view name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

void Builtins::add(Builtin builtin) {
  std::string name = builtin.name;
  table_[name] = std::move(builtin);
}

std::vector<std::string> Builtins::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : table_) out.push_back(name);
  return out;
}

}  // namespace flat::interp
