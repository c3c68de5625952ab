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

#include "flatcore/common.hpp"

#include <cstdio>

namespace flat {

Text from_utf8(std::string_view bytes) {
  Text out;
  out.reserve(bytes.size());
  size_t i = 0;
  auto byte = [&](size_t k) { return static_cast<unsigned char>(bytes[k]); };
  while (i < bytes.size()) {
    unsigned char b = byte(i);
    char32_t cp = 0;
    int extra = 0;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      cp = b & 0x1F;
      extra = 1;
    } else if ((b & 0xF0) == 0xE0) {
      cp = b & 0x0F;
      extra = 2;
    } else if ((b & 0xF8) == 0xF0) {
      cp = b & 0x07;
      extra = 3;
    } else {
      throw Error(Errc::Syntax, "invalid UTF-8 lead byte at offset " +
                                    std::to_string(i));
    }
    if (extra > 0 && i + extra >= bytes.size()) {
      throw Error(Errc::Syntax, "truncated UTF-8 sequence at offset " +
                                    std::to_string(i));
    }
    for (int k = 1; k <= extra; ++k) {
      unsigned char c = byte(i + k);
      if ((c & 0xC0) != 0x80) {
        throw Error(Errc::Syntax, "invalid UTF-8 continuation at offset " +
                                      std::to_string(i + k));
      }
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw Error(Errc::Syntax, "invalid scalar value in UTF-8 at offset " +
                                    std::to_string(i));
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string to_utf8(TextView text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::string quote(TextView text) {
  std::string out = "\"";
  for (char32_t cp : text) {
    switch (cp) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (cp < 0x20 || cp == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned>(cp));
          out += buf;
        } else {
          out += to_utf8(TextView(&cp, 1));
        }
    }
  }
  out += '"';
  return out;
}

std::string SourceLoc::str() const {
  std::string out = file.empty() ? "<input>" : file;
  if (known()) {
    out += ":" + std::to_string(line) + ":" + std::to_string(column);
  }
  return out;
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::Syntax: return "SyntaxError";
    case Errc::DuplicateRule: return "DuplicateRule";
    case Errc::UndefinedNonterminal: return "UndefinedNonterminal";
    case Errc::MissingStart: return "MissingStart";
    case Errc::BadRepetition: return "BadRepetition";
    case Errc::BadCharRange: return "BadCharRange";
    case Errc::NonProductiveNonterminal: return "NonProductiveNonterminal";
    case Errc::NotInLanguage: return "NotInLanguage";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::NoMatch: return "NoMatch";
    case Errc::AmbiguousMatch: return "AmbiguousMatch";
    case Errc::UnresolvedLang: return "UnresolvedLang";
    case Errc::DuplicateDefinition: return "DuplicateDefinition";
    case Errc::UnresolvedName: return "UnresolvedName";
    case Errc::NoProducer: return "NoProducer";
    case Errc::AttemptsExhausted: return "AttemptsExhausted";
    case Errc::Usage: return "UsageError";
  }
  return "Error";
}

std::string Error::describe() const {
  std::string out;
  if (loc_.known() || !loc_.file.empty()) out += loc_.str() + ": ";
  out += errc_name(code_);
  out += ": ";
  out += what();
  return out;
}

}  // namespace flat
