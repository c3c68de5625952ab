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

#include "flatcore/runtime.hpp"

#include <limits>

namespace flat::interp {

using nlohmann::ordered_json;

std::string render(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
    case Value::Kind::Int: return v.as_int().str();
    case Value::Kind::Str: return quote(v.as_str());
    case Value::Kind::Fun: return "<function>";
  }
  return "?";
}

ordered_json to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool:
      return v.as_bool();
    case Value::Kind::Int: {
      const BigInt& n = v.as_int();
      if (n >= std::numeric_limits<int64_t>::min() &&
          n <= std::numeric_limits<int64_t>::max()) {
        return static_cast<int64_t>(n);
      }
      return n.str();
    }
    case Value::Kind::Str:
      return to_utf8(v.as_str());
    case Value::Kind::Fun:
      return "<function>";
  }
  return nullptr;
}

Value from_json(const ordered_json& j, const ast::SimpleType& type) {
  auto fail = [&](const char* want) -> Value {
    throw Error(Errc::Usage, std::string("expected ") + want + " argument, got " +
                                 j.dump());
  };
  switch (type.kind) {
    case ast::SimpleType::Kind::Int:
      if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Value::integer(j.get<uint64_t>());
        return Value::integer(j.get<int64_t>());
      }
      if (j.is_string()) {
        // Big integers may be passed as decimal strings.
        try {
          return Value::integer(BigInt(j.get<std::string>()));
        } catch (const std::exception&) {
        }
      }
      return fail("an Int");
    case ast::SimpleType::Kind::Bool:
      if (j.is_boolean()) return Value::boolean(j.get<bool>());
      return fail("a Bool");
    case ast::SimpleType::Kind::String:
      if (j.is_string()) return Value::string(from_utf8(j.get<std::string>()));
      return fail("a String");
    case ast::SimpleType::Kind::Fun:
      return fail("a non-function");
  }
  return fail("a value");
}

const char* runtime_kind_name(RuntimeKind kind) {
  switch (kind) {
    case RuntimeKind::ArgType: return "ArgType";
    case RuntimeKind::ReturnType: return "ReturnType";
    case RuntimeKind::Pre: return "Pre";
    case RuntimeKind::Post: return "Post";
    case RuntimeKind::LocalType: return "LocalType";
    case RuntimeKind::UserAssert: return "UserAssert";
    case RuntimeKind::AssertionFailed: return "AssertionFailed";
    case RuntimeKind::DivisionByZero: return "DivisionByZero";
    case RuntimeKind::SelectError: return "SelectError";
    case RuntimeKind::MissingReturn: return "MissingReturn";
    case RuntimeKind::BudgetExceeded: return "BudgetExceeded";
    case RuntimeKind::BadArguments: return "BadArguments";
  }
  return "?";
}

RuntimeError::RuntimeError(RuntimeKind kind, std::string detail, SourceLoc loc)
    : std::runtime_error(detail),
      kind(kind),
      detail(std::move(detail)),
      loc(std::move(loc)) {}

namespace {

std::string tuple_text(const std::vector<Value>& values) {
  std::string out = "(";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += render(values[i]);
  }
  return out + ")";
}

}  // namespace

std::string RuntimeError::render() const {
  std::string out;
  std::string label = "expected type: ";
  switch (kind) {
    case RuntimeKind::ArgType:
      out = "Type mismatch for argument " + std::to_string(arg_index) +
            " of method " + method;
      break;
    case RuntimeKind::ReturnType:
      out = "Type mismatch for return value of method " + method;
      break;
    case RuntimeKind::LocalType:
      out = "Type mismatch for local variable " + subject + " of method " +
            method;
      break;
    case RuntimeKind::Pre:
      out = "Precondition violated for method " + method;
      label = "expected:      ";
      break;
    case RuntimeKind::Post:
      out = "Postcondition violated for method " + method;
      label = "expected:      ";
      break;
    case RuntimeKind::UserAssert:
    case RuntimeKind::AssertionFailed:
      out = "Assertion failed";
      if (!method.empty()) out += " in method " + method;
      if (!detail.empty()) out += ": " + detail;
      label = "assertion:     ";
      break;
    default:
      out = std::string(runtime_kind_name(kind)) + ": " + detail;
      break;
  }
  out += "\n";
  if (expected) out += "  " + label + *expected + "\n";
  if (actual.size() == 1) {
    out += "  actual value:  " + interp::render(actual.front()) + "\n";
  } else if (actual.size() > 1) {
    out += "  actual values: " + tuple_text(actual) + "\n";
  }
  if (loc.known()) out += "  at " + loc.str() + "\n";
  for (auto it = call_stack.rbegin(); it != call_stack.rend(); ++it) {
    out += "  in method " + it->method;
    if (it->call_site.known()) out += " called at " + it->call_site.str();
    out += "\n";
  }
  return out;
}

ordered_json RuntimeError::to_json() const {
  ordered_json j;
  j["kind"] = runtime_kind_name(kind);
  j["location"] = loc.known() ? ordered_json(loc.str()) : ordered_json(nullptr);
  j["expected"] = expected ? ordered_json(*expected) : ordered_json(nullptr);
  if (actual.empty()) {
    j["actual"] = nullptr;
  } else if (actual.size() == 1) {
    j["actual"] = interp::to_json(actual.front());
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& v : actual) arr.push_back(interp::to_json(v));
    j["actual"] = arr;
  }
  return j;
}

}  // namespace flat::interp
