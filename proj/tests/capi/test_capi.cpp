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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "flat/flat.h"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string sample(const std::string& name) {
  return std::string(FLAT_SOURCE_DIR) + "/samples/" + name;
}

// Owns a session and frees returned strings.
struct Session {
  flat_session* s = flat_session_new();
  ~Session() { flat_session_free(s); }

  std::string take(char* out) {
    std::string r = out ? out : "";
    flat_string_free(out);
    return r;
  }
  std::string error() const { return flat_session_error(s); }
};

TEST_CASE("version and status names") {
  CHECK(std::string(flat_version()).size() > 0);
  CHECK(std::string(flat_status_name(FLAT_OK)) == "ok");
  CHECK(std::string(flat_status_name(FLAT_E_RUNTIME)) == "runtime");
}

TEST_CASE("compile and run") {
  Session s;
  REQUIRE(flat_session_add_file(s.s, sample("getname_buggy.flat").c_str()) == FLAT_OK);
  REQUIRE(flat_session_compile(s.s) == FLAT_OK);

  char* out = nullptr;
  CHECK(flat_run(s.s, "getname", R"(["http://a.b/c"])", 1, &out) == FLAT_OK);
  CHECK(json::parse(s.take(out)) == "a.b");

  out = nullptr;
  CHECK(flat_run(s.s, "getname", R"(["http://W"])", 1, &out) == FLAT_E_RUNTIME);
  CHECK(out == nullptr);
  CHECK(s.error().find("Host") != std::string::npos);
  auto err = json::parse(flat_session_error_json(s.s));
  CHECK(err["kind"] == "ReturnType");
  CHECK(err["actual"] == "");

  // Without instrumentation the wrong host comes back unchecked.
  CHECK(flat_run(s.s, "getname", R"(["http://W"])", 0, &out) == FLAT_OK);
  CHECK(json::parse(s.take(out)) == "");

  CHECK(flat_run(s.s, "getname", R"([1])", 1, &out) == FLAT_E_USAGE);
  CHECK(flat_run(s.s, "getname", "not json", 1, &out) == FLAT_E_USAGE);
  CHECK(flat_run(s.s, "nosuch", "[]", 1, &out) == FLAT_E_USAGE);
}

TEST_CASE("errors by status") {
  Session s;
  char* out = nullptr;
  CHECK(flat_run(s.s, "m", "[]", 1, &out) == FLAT_E_STATE);
  CHECK(flat_session_add_file(s.s, "/nonexistent.flat") == FLAT_E_USAGE);

  Session syntax;
  flat_session_add_source(syntax.s, "a.flat", "method m(: Int {");
  CHECK(flat_session_compile(syntax.s) == FLAT_E_SYNTAX);
  CHECK(syntax.error().find("a.flat:1:") != std::string::npos);

  Session types;
  flat_session_add_source(types.s, "b.flat", "method m(): Int { return true; }");
  CHECK(flat_session_compile(types.s) == FLAT_E_TYPE);
  CHECK(types.error().find("TypeMismatch") != std::string::npos);

  Session names;
  flat_session_add_source(names.s, "c.flat", "method m(): Int { return x; }");
  CHECK(flat_session_compile(names.s) == FLAT_E_RESOLVE);

  Session grammar;
  CHECK(flat_session_add_grammar(grammar.s, "G", "start: x;") == FLAT_E_GRAMMAR);
}

TEST_CASE("instrument and print") {
  Session s;
  flat_session_add_file(s.s, sample("getname.flat").c_str());
  REQUIRE(flat_session_compile(s.s) == FLAT_OK);
  char* out = nullptr;
  REQUIRE(flat_print_program(s.s, &out) == FLAT_OK);
  CHECK(s.take(out).find("ensures") != std::string::npos);
  REQUIRE(flat_instrument(s.s, &out) == FLAT_OK);
  std::string text = s.take(out);
  CHECK(text.find("assert $z1 in Host;") != std::string::npos);
  CHECK(text.find("ensures") == std::string::npos);
}

TEST_CASE("fuzz") {
  Session s;
  flat_session_add_file(s.s, sample("getname_buggy.flat").c_str());
  REQUIRE(flat_session_compile(s.s) == FLAT_OK);
  char* a = nullptr;
  char* b = nullptr;
  size_t failures = 0;
  const char* opts = R"({"num": 200, "seed": 5, "time": false})";
  REQUIRE(flat_fuzz(s.s, "getname", opts, &a, &failures) == FLAT_OK);
  REQUIRE(flat_fuzz(s.s, "getname", opts, &b, &failures) == FLAT_OK);
  std::string ra = s.take(a);
  CHECK(ra == s.take(b));
  auto report = json::parse(ra);
  CHECK(report["requested"] == 200);
  CHECK(report["failures"].size() == failures);
  CHECK(failures > 0);
  CHECK_FALSE(report.contains("wall_time_ms"));

  Session str;
  flat_session_add_source(str.s, "s.flat", "method m(x: String): Int { return length(x); }");
  REQUIRE(flat_session_compile(str.s) == FLAT_OK);
  CHECK(flat_fuzz(str.s, "m", "{}", &a, &failures) == FLAT_E_NO_PRODUCER);
  CHECK(flat_fuzz(str.s, "m", R"({"num": 10, "const": {"x": "abc"}})", &a, &failures) ==
        FLAT_OK);
  CHECK(json::parse(s.take(a))["passes"] == 10);
  CHECK(flat_fuzz(str.s, "m", R"({"num": 10, "using": {"x": "IntExp"}})", &a, &failures) ==
        FLAT_OK);
  s.take(a);

  Session never;
  flat_session_add_source(never.s, "n.flat",
                          "method m(x: {n: Int | n > 5000}): Int { return x; }");
  REQUIRE(flat_session_compile(never.s) == FLAT_OK);
  CHECK(flat_fuzz(never.s, "m", R"({"max_attempts": 5})", &a, &failures) == FLAT_E_ATTEMPTS);
}

TEST_CASE("language queries") {
  Session s;
  REQUIRE(flat_session_add_grammar(s.s, "Pair", R"(start: Host "," Host;)") == FLAT_OK);
  int member = -1;
  REQUIRE(flat_recognize(s.s, "Pair", "a.b,c", &member) == FLAT_OK);
  CHECK(member == 1);
  REQUIRE(flat_recognize(s.s, "URL", "http://", &member) == FLAT_OK);
  CHECK(member == 0);
  CHECK(flat_recognize(s.s, "Nope", "x", &member) == FLAT_E_RESOLVE);

  char* out = nullptr;
  REQUIRE(flat_languages(s.s, &out) == FLAT_OK);
  auto langs = json::parse(s.take(out));
  CHECK(std::find(langs.begin(), langs.end(), "Pair") != langs.end());
  CHECK(std::find(langs.begin(), langs.end(), "URL") != langs.end());

  REQUIRE(flat_parse_tree(s.s, "IntExp", "1+2", &out) == FLAT_OK);
  CHECK(json::parse(s.take(out))["label"] == "start");
  CHECK(flat_parse_tree(s.s, "IntExp", "+", &out) == FLAT_E_NOT_IN_LANGUAGE);

  REQUIRE(flat_select(s.s, "URL", "..host", "http://W/x", 0, &out) == FLAT_OK);
  CHECK(json::parse(s.take(out)) == "W");
  REQUIRE(flat_select(s.s, "RelPath", "..part", "a/", 0, &out) == FLAT_E_NOT_IN_LANGUAGE);
  REQUIRE(flat_select(s.s, "RelPath", "..part", "foo/./", 1, &out) == FLAT_OK);
  CHECK(json::parse(s.take(out)) == json::array({"foo", "."}));
  CHECK(flat_select(s.s, "RelPath", "..part", "foo/./", 0, &out) == FLAT_E_SELECT);
  CHECK(flat_select(s.s, "URL", "..nosuch", "http://W", 0, &out) == FLAT_E_SELECT);

  REQUIRE(flat_generate(s.s, "Pair", 20, 3, 0, &out) == FLAT_OK);
  auto sentences = json::parse(s.take(out));
  CHECK(sentences.size() == 20);
  for (const auto& x : sentences) {
    REQUIRE(flat_recognize(s.s, "Pair", x.get<std::string>().c_str(), &member) == FLAT_OK);
    CHECK(member == 1);
  }
  REQUIRE(flat_generate(s.s, "Pair", 20, 3, 0, &out) == FLAT_OK);
  CHECK(json::parse(s.take(out)) == sentences);
}

TEST_CASE("sessions are independent") {
  Session a, b;
  flat_session_add_source(a.s, "a.flat", "method m(): Int { return 1; }");
  flat_session_add_source(b.s, "b.flat", "method m(): Int { return 2; }");
  REQUIRE(flat_session_compile(a.s) == FLAT_OK);
  REQUIRE(flat_session_compile(b.s) == FLAT_OK);
  char* out = nullptr;
  REQUIRE(flat_run(a.s, "m", "[]", 1, &out) == FLAT_OK);
  CHECK(a.take(out) == "1");
  REQUIRE(flat_run(b.s, "m", "[]", 1, &out) == FLAT_OK);
  CHECK(b.take(out) == "2");
}

}  // namespace
