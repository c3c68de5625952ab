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

#include "flatcore/library.hpp"

namespace flat::library {

const std::vector<GrammarSource>& sources() {
  static const std::vector<GrammarSource> kSources = {
      {"Host", R"(
start: label ("." label)*;
label: [a-zA-Z0-9]+ ("-" [a-zA-Z0-9]+)*;
)"},
      {"URL", R"(
start: scheme "://" host path;
scheme: "http" | "https" | "ftp";
host: Host;
path: ("/" segment)*;
segment: [a-zA-Z0-9._~\-]*;
)"},
      {"RelPath", R"(
start: (part "/")*;
part: "foo" | ".." | ".";
)"},
      {"IntExp", R"(
start: (number op)* number;
number: [0-9]+;
op: "+" | "-";
)"},
      {"TeamNameFormat", R"(
start: char{1,20};
char: [a-zA-Z0-9-_ ];
)"},
      {"JSON", R"(
start: ws value ws;
value: object | array | string | number | "true" | "false" | "null";
object: "{" ws "}" | "{" members "}";
members: member ("," member)*;
member: ws string ws ":" ws value ws;
array: "[" ws "]" | "[" elements "]";
elements: element ("," element)*;
element: ws value ws;
string: "\"" character* "\"";
character: [^"\\\x00-\x1f] | "\\" escape;
escape: ["\\/bfnrt] | "u" hex{4};
hex: [0-9a-fA-F];
number: integer fraction? exponent?;
integer: "-"? ("0" | [1-9] [0-9]*);
fraction: "." [0-9]+;
exponent: ("e" | "E") ("+" | "-")? [0-9]+;
ws: [ \t\n\r]*;
)"},
  };
  return kSources;
}

const grammar::Registry& builtin_registry() {
  static const grammar::Registry kRegistry = [] {
    grammar::Registry r;
    for (const auto& s : sources()) {
      r.add(grammar::parse_grammar(s.rules, r, s.name));
    }
    return r;
  }();
  return kRegistry;
}

}  // namespace flat::library
