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

#include <cctype>
#include <string>

#include "doctest.h"
#include "flatcore/fuzz.hpp"
#include "flatcore/library.hpp"
#include "flatcore/parse.hpp"
#include "json.hpp"
#include "testing.hpp"

namespace flat {
namespace {

using testing::T;

bool in(const std::string& lang, const std::string& text) {
  return parse::recognize(testing::builtin_cfg(lang), T(text));
}

TEST_SUITE("library") {

TEST_CASE("builtin languages") {
  std::vector<std::string> names;
  for (const auto& s : library::sources()) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"Host", "URL", "RelPath", "IntExp",
                                          "TeamNameFormat", "JSON"});
  for (const auto& n : names) CHECK(testing::lib().contains(n));
}

TEST_CASE("hosts and urls") {
  CHECK(in("Host", "example.com"));
  CHECK(in("Host", "W"));
  CHECK(in("Host", "a-b.c"));
  CHECK_FALSE(in("Host", ""));
  CHECK_FALSE(in("Host", "a..b"));
  CHECK_FALSE(in("Host", "-a"));
  CHECK(in("URL", "http://W"));
  CHECK(in("URL", "ftp://a.b/c/d.txt"));
  CHECK(in("URL", "https://x/"));
  CHECK_FALSE(in("URL", "gopher://x"));
  CHECK_FALSE(in("URL", "http://"));
  CHECK_FALSE(in("URL", "https://localhost'); DROP TABLE users --/"));
}

TEST_CASE("relative paths, expressions and team names") {
  CHECK(in("RelPath", ""));
  CHECK(in("RelPath", "foo/../"));
  CHECK_FALSE(in("RelPath", "foo"));
  CHECK(in("IntExp", "12-3+4"));
  CHECK_FALSE(in("IntExp", "1++2"));
  CHECK(in("TeamNameFormat", "R-_b"));
  CHECK(in("TeamNameFormat", "abcdefghijklmnopqrst"));
  CHECK_FALSE(in("TeamNameFormat", "abcdefghijklmnopqrstu"));
  CHECK_FALSE(in("TeamNameFormat", "a.b"));
}

// Exponents outside strings become e0; huge ones overflow a double, which
// the JSON library refuses.
std::string clamp_exponents(const std::string& s) {
  std::string out;
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      out += c;
      if (c == '\\') out += s[++i];
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    if ((c == 'e' || c == 'E') && i > 0 &&
        std::isdigit(static_cast<unsigned char>(s[i - 1]))) {
      out += "e0";
      if (i + 1 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-')) ++i;
      while (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) ++i;
      continue;
    }
    out += c;
  }
  return out;
}

TEST_CASE("json sentences are json") {
  CHECK(in("JSON", R"({"a": [1, -2.5e3, true, null, "x\n"]})"));
  CHECK_FALSE(in("JSON", "{a: 1}"));
  const auto& g = testing::builtin_cfg("JSON");
  fuzz::Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    std::string s = testing::S(fuzz::generate(g, rng, fuzz::default_max_depth(g)));
    INFO(s);
    CHECK(nlohmann::json::accept(clamp_exponents(s)));
  }
}

TEST_CASE("generated sentences are recognized") {
  for (const auto& name : testing::lib().names()) {
    const auto& g = testing::builtin_cfg(name);
    fuzz::Rng rng(6);
    for (int i = 0; i < 300; ++i) {
      Text s = fuzz::generate(g, rng, fuzz::default_max_depth(g));
      INFO(name << ": " << testing::S(s));
      CHECK(parse::recognize(g, s));
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
