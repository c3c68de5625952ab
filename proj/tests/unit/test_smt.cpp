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

#include "doctest.h"
#include "flatcore/builtins.hpp"
#include "oracles.hpp"
#include "testing.hpp"

namespace flat {
namespace {

namespace smt = interp::smt;
using ast::BigInt;
using testing::T;

std::vector<Text> words(const Text& alphabet, size_t max_len) {
  std::vector<Text> out{Text()};
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (char32_t c : alphabet) out.push_back(out[i] + c);
  }
  return out;
}

TEST_SUITE("smt") {

TEST_CASE("edge cases") {
  CHECK(smt::indexof(U"http://W", U"/", 8) == -1);
  CHECK(smt::indexof(U"http://W", U"/", 0) == 5);
  CHECK(smt::indexof(U"http://W", U"://", 0) == 4);
  CHECK(smt::indexof(U"abc", U"", 3) == 3);
  CHECK(smt::indexof(U"abc", U"", 4) == -1);
  CHECK(smt::indexof(U"abc", U"a", -1) == -1);
  CHECK(smt::substr(U"abcdef", 2, 100) == U"cdef");
  CHECK(smt::substr(U"http://W", 7, -6) == U"");
  CHECK(smt::substr(U"abc", -1, 2) == U"");
  CHECK(smt::substr(U"abc", 3, 1) == U"");
  CHECK(smt::at(U"abc", 1) == U"b");
  CHECK(smt::at(U"abc", 3) == U"");
  CHECK(smt::at(U"abc", -1) == U"");
  CHECK(smt::str_to_int(U"0042") == 42);
  CHECK(smt::str_to_int(U"") == -1);
  CHECK(smt::str_to_int(U"-1") == -1);
  CHECK(smt::str_to_int(U"1a") == -1);
  CHECK(smt::str_to_int(U"123456789012345678901234567890") ==
        BigInt("123456789012345678901234567890"));
  CHECK(smt::int_to_str(-3) == U"");
  CHECK(smt::int_to_str(120) == U"120");
  CHECK(smt::replace(U"aXbX", U"X", U"Y") == U"aYbX");
  CHECK(smt::replace(U"ab", U"", U"Z") == U"Zab");
  CHECK(smt::length(T("\xc3\xa9\xe2\x98\x83")) == 2);
}

TEST_CASE("agree with scans over a small alphabet") {
  auto ss = words(U"ab", 4);
  auto ts = words(U"ab", 2);
  for (const auto& s : ss) {
    for (int64_t i = -2; i <= 6; ++i) {
      INFO("s=" << testing::S(s) << " i=" << i);
      CHECK(smt::at(s, i) == oracle::scan_at(s, i));
      for (const auto& t : ts) {
        CHECK(smt::indexof(s, t, i) == oracle::scan_indexof(s, t, i));
      }
      for (int64_t n = -2; n <= 6; ++n) {
        CHECK(smt::substr(s, i, n) == oracle::scan_substr(s, i, n));
      }
    }
    for (const auto& t : ts) {
      CHECK(smt::contains(s, t) == (oracle::scan_indexof(s, t, 0) >= 0));
      CHECK(smt::prefixof(t, s) ==
            (oracle::scan_substr(s, 0, static_cast<int64_t>(t.size())) == t));
      int64_t from = static_cast<int64_t>(s.size()) - static_cast<int64_t>(t.size());
      CHECK(smt::suffixof(t, s) ==
            (from >= 0 && oracle::scan_substr(s, from, static_cast<int64_t>(t.size())) == t));
    }
  }
}

TEST_CASE("str_to_int agrees with a digit scan") {
  for (const auto& s : words(U"07a-", 5)) {
    auto expected = oracle::scan_str_to_int(s);
    REQUIRE(expected.has_value());
    CHECK(smt::str_to_int(s) == *expected);
  }
  for (int64_t n = 0; n < 2000; n += 7) {
    CHECK(smt::str_to_int(smt::int_to_str(n)) == n);
  }
}

TEST_CASE("euclidean division") {
  for (int a = -9; a <= 9; ++a) {
    for (int b = -4; b <= 4; ++b) {
      if (b == 0) continue;
      BigInt q = interp::euclid_div(a, b);
      BigInt r = interp::euclid_mod(a, b);
      CHECK(BigInt(a) == BigInt(b) * q + r);
      CHECK(r >= 0);
      CHECK(r < abs(BigInt(b)));
    }
  }
  CHECK_THROWS(interp::euclid_div(1, 0));
}

}  // TEST_SUITE

}  // namespace
}  // namespace flat
