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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flat {

// Strings of the object language are sequences of Unicode scalar values.
// Offsets and lengths everywhere count scalar values, never bytes.
using Text = std::u32string;
using TextView = std::u32string_view;

Text from_utf8(std::string_view bytes);
std::string to_utf8(TextView text);

// Renders `text` as a double-quoted literal using the escape set shared by
// grammar literals and program string literals.
std::string quote(TextView text);

struct SourceLoc {
  std::string file;
  int line = 0;  // 1-based; 0 means unknown
  int column = 0;

  bool known() const { return line > 0; }
  std::string str() const;
};

enum class Errc {
  Syntax,
  DuplicateRule,
  UndefinedNonterminal,
  MissingStart,
  BadRepetition,
  BadCharRange,
  NonProductiveNonterminal,
  NotInLanguage,
  UnknownLabel,
  NoMatch,
  AmbiguousMatch,
  UnresolvedLang,
  DuplicateDefinition,
  UnresolvedName,
  NoProducer,
  AttemptsExhausted,
  Usage,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, SourceLoc loc = {})
      : std::runtime_error(message), code_(code), loc_(std::move(loc)) {}

  Errc code() const { return code_; }
  const SourceLoc& loc() const { return loc_; }

  // "file:line:col: Kind: message" when a location is known.
  std::string describe() const;

 private:
  Errc code_;
  SourceLoc loc_;
};

}  // namespace flat
