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

#include "flatcore/session.hpp"

#include <fstream>
#include <sstream>

#include "flatcore/library.hpp"

namespace flat::session {

Compiled compile(const std::vector<Source>& sources,
                 const interp::Builtins& builtins, front::ParseOptions options) {
  grammar::Registry known = library::builtin_registry();
  ast::Program merged;
  for (const auto& src : sources) {
    ast::Program p = front::parse_program(src.text, src.name, known, options);
    for (auto& def : p.defs) {
      if (auto* lang = std::get_if<ast::LangDef>(&def)) {
        known.add(*lang->grammar);
      }
      merged.defs.push_back(std::move(def));
    }
  }
  Compiled out{front::resolve(std::move(merged), library::builtin_registry(),
                              builtins),
               {}};
  out.diagnostics = typecheck::simple_typecheck(out.program, builtins);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Usage, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace flat::session
