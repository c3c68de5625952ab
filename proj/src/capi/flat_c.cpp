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

#include "flat/flat.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "flatcore/fuzz.hpp"
#include "flatcore/instrument.hpp"
#include "flatcore/interp.hpp"
#include "flatcore/library.hpp"
#include "flatcore/parse.hpp"
#include "flatcore/session.hpp"
#include "flatcore/typecheck.hpp"
#include "flatcore/xpath.hpp"
#include "json.hpp"

using nlohmann::ordered_json;

struct flat_session {
  std::vector<flat::session::Source> sources;
  std::vector<flat::grammar::Grammar> grammars;  // standalone, in order
  std::optional<flat::session::Compiled> compiled;
  std::optional<flat::front::ResolvedProgram> instrumented;
  std::optional<flat::grammar::Registry> registry;  // cache
  std::string error;
  std::string error_json;
};

namespace {

flat_status status_of(flat::Errc code) {
  using flat::Errc;
  switch (code) {
    case Errc::Syntax: return FLAT_E_SYNTAX;
    case Errc::DuplicateRule:
    case Errc::UndefinedNonterminal:
    case Errc::MissingStart:
    case Errc::BadRepetition:
    case Errc::BadCharRange:
    case Errc::NonProductiveNonterminal: return FLAT_E_GRAMMAR;
    case Errc::NotInLanguage: return FLAT_E_NOT_IN_LANGUAGE;
    case Errc::UnknownLabel:
    case Errc::NoMatch:
    case Errc::AmbiguousMatch: return FLAT_E_SELECT;
    case Errc::UnresolvedLang:
    case Errc::DuplicateDefinition:
    case Errc::UnresolvedName: return FLAT_E_RESOLVE;
    case Errc::NoProducer: return FLAT_E_NO_PRODUCER;
    case Errc::AttemptsExhausted: return FLAT_E_ATTEMPTS;
    case Errc::Usage: return FLAT_E_USAGE;
  }
  return FLAT_E_INTERNAL;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body`, translating exceptions into a status and session error.
template <typename F>
flat_status guarded(flat_session* s, F&& body) {
  if (!s) return FLAT_E_USAGE;
  s->error.clear();
  s->error_json.clear();
  try {
    return body();
  } catch (const flat::interp::RuntimeError& e) {
    s->error = e.render();
    s->error_json = e.to_json().dump();
    return e.kind == flat::interp::RuntimeKind::BadArguments ? FLAT_E_USAGE
                                                             : FLAT_E_RUNTIME;
  } catch (const flat::Error& e) {
    s->error = e.describe();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    s->error = std::string("invalid JSON: ") + e.what();
    return FLAT_E_USAGE;
  } catch (const std::exception& e) {
    s->error = std::string("internal error: ") + e.what();
    return FLAT_E_INTERNAL;
  }
}

flat_status fail(flat_session* s, flat_status status, std::string message) {
  s->error = std::move(message);
  return status;
}

const flat::grammar::Registry& registry(flat_session* s) {
  if (!s->registry) {
    flat::grammar::Registry r = s->compiled ? s->compiled->program.registry
                                            : flat::library::builtin_registry();
    for (const auto& g : s->grammars) r.add(g);
    s->registry = std::move(r);
  }
  return *s->registry;
}

const flat::grammar::CoreCFG& cfg(flat_session* s, const char* lang) {
  const flat::grammar::Language* l = registry(s).find(lang ? lang : "");
  if (!l) {
    throw flat::Error(flat::Errc::UnresolvedLang,
                      std::string("unknown language '") + (lang ? lang : "") +
                          "'");
  }
  return *l->cfg;
}

const flat::front::ResolvedProgram& instrumented(flat_session* s) {
  if (!s->instrumented) {
    s->instrumented = flat::instrument::instrument_program(s->compiled->program);
  }
  return *s->instrumented;
}

const flat::ast::MethodMeta& method_meta(flat_session* s, const char* method) {
  const auto& meta = s->compiled->program.meta;
  auto it = meta.find(method ? method : "");
  if (it == meta.end()) {
    throw flat::Error(flat::Errc::Usage, std::string("no method named '") +
                                             (method ? method : "") + "'");
  }
  return it->second;
}

flat::interp::Value arg_value(const ordered_json& j, const flat::ast::Param& p) {
  return flat::interp::from_json(j, flat::typecheck::erase(*p.type));
}

}  // namespace

extern "C" {

const char* flat_version(void) { return "0.1.0"; }

const char* flat_status_name(flat_status status) {
  switch (status) {
    case FLAT_OK: return "ok";
    case FLAT_E_USAGE: return "usage";
    case FLAT_E_SYNTAX: return "syntax";
    case FLAT_E_GRAMMAR: return "grammar";
    case FLAT_E_RESOLVE: return "resolve";
    case FLAT_E_TYPE: return "type";
    case FLAT_E_RUNTIME: return "runtime";
    case FLAT_E_NOT_IN_LANGUAGE: return "not-in-language";
    case FLAT_E_SELECT: return "select";
    case FLAT_E_NO_PRODUCER: return "no-producer";
    case FLAT_E_ATTEMPTS: return "attempts-exhausted";
    case FLAT_E_STATE: return "state";
    case FLAT_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void flat_string_free(char* s) { std::free(s); }

flat_session* flat_session_new(void) { return new (std::nothrow) flat_session(); }

void flat_session_free(flat_session* session) { delete session; }

const char* flat_session_error(const flat_session* session) {
  return session ? session->error.c_str() : "";
}

const char* flat_session_error_json(const flat_session* session) {
  return session ? session->error_json.c_str() : "";
}

flat_status flat_session_add_source(flat_session* session, const char* name,
                                    const char* text) {
  return guarded(session, [&] {
    if (!text) return fail(session, FLAT_E_USAGE, "source text is null");
    session->sources.push_back({name ? name : "<input>", text});
    session->compiled.reset();
    session->instrumented.reset();
    session->registry.reset();
    return FLAT_OK;
  });
}

flat_status flat_session_add_file(flat_session* session, const char* path) {
  return guarded(session, [&] {
    if (!path) return fail(session, FLAT_E_USAGE, "path is null");
    std::string text = flat::session::read_file(path);
    return flat_session_add_source(session, path, text.c_str());
  });
}

flat_status flat_session_add_grammar(flat_session* session, const char* name,
                                     const char* rules) {
  return guarded(session, [&] {
    if (!name || !rules) return fail(session, FLAT_E_USAGE, "null argument");
    flat::grammar::Grammar g =
        flat::grammar::parse_grammar(rules, registry(session), name);
    flat::grammar::Registry r = registry(session);
    r.add(g);  // validates desugaring before committing
    session->grammars.push_back(std::move(g));
    session->registry = std::move(r);
    return FLAT_OK;
  });
}

flat_status flat_session_compile(flat_session* session) {
  return guarded(session, [&] {
    session->compiled.reset();
    session->instrumented.reset();
    session->registry.reset();
    flat::session::Compiled c = flat::session::compile(session->sources);
    if (!c.ok()) {
      std::string text;
      for (const auto& d : c.diagnostics) text += d.str() + "\n";
      return fail(session, FLAT_E_TYPE, text);
    }
    session->compiled = std::move(c);
    return FLAT_OK;
  });
}

flat_status flat_print_program(flat_session* session, char** out) {
  return guarded(session, [&] {
    if (!session->compiled) return fail(session, FLAT_E_STATE, "not compiled");
    if (!out) return fail(session, FLAT_E_USAGE, "null output");
    *out = dup(flat::ast::print_program(session->compiled->program.program));
    return FLAT_OK;
  });
}

flat_status flat_instrument(flat_session* session, char** out) {
  return guarded(session, [&] {
    if (!session->compiled) return fail(session, FLAT_E_STATE, "not compiled");
    if (!out) return fail(session, FLAT_E_USAGE, "null output");
    *out = dup(flat::ast::print_program(instrumented(session).program));
    return FLAT_OK;
  });
}

flat_status flat_run(flat_session* session, const char* method,
                     const char* args_json, int use_instrumented,
                     char** result_json) {
  return guarded(session, [&] {
    if (!session->compiled) return fail(session, FLAT_E_STATE, "not compiled");
    if (!result_json) return fail(session, FLAT_E_USAGE, "null output");
    const flat::ast::MethodMeta& meta = method_meta(session, method);
    ordered_json args = ordered_json::parse(args_json ? args_json : "[]");
    if (!args.is_array()) {
      return fail(session, FLAT_E_USAGE, "arguments must be a JSON array");
    }
    if (args.size() != meta.params.size()) {
      return fail(session, FLAT_E_USAGE,
                  "method " + meta.name + " takes " +
                      std::to_string(meta.params.size()) + " arguments, given " +
                      std::to_string(args.size()));
    }
    std::vector<flat::interp::Value> values;
    for (size_t i = 0; i < args.size(); ++i) {
      values.push_back(arg_value(args[i], meta.params[i]));
    }
    const flat::front::ResolvedProgram& program =
        use_instrumented ? instrumented(session) : session->compiled->program;
    flat::interp::Interpreter interp(program);
    flat::interp::Value result = interp.run_method(meta.name, values);
    *result_json = dup(flat::interp::to_json(result).dump());
    return FLAT_OK;
  });
}

flat_status flat_fuzz(flat_session* session, const char* method,
                      const char* options_json, char** report_json,
                      size_t* failures) {
  return guarded(session, [&] {
    if (!session->compiled) return fail(session, FLAT_E_STATE, "not compiled");
    if (!report_json) return fail(session, FLAT_E_USAGE, "null output");
    const flat::ast::MethodMeta& meta = method_meta(session, method);
    ordered_json opts = ordered_json::parse(
        options_json && *options_json ? options_json : "{}");
    flat::fuzz::FuzzOptions o;
    o.num = opts.value("num", size_t{1000});
    o.seed = opts.value("seed", uint64_t{0});
    o.producers.max_depth = opts.value("max_depth", 0);
    o.producers.max_attempts = opts.value("max_attempts", 1000);
    bool with_time = opts.value("time", true);
    if (opts.contains("using")) {
      for (const auto& [param, lang] : opts["using"].items()) {
        const flat::grammar::Language* l =
            registry(session).find(lang.get<std::string>());
        if (!l) {
          return fail(session, FLAT_E_USAGE,
                      "unknown language '" + lang.get<std::string>() + "'");
        }
        flat::fuzz::Override ov;
        ov.kind = flat::fuzz::Override::Kind::Grammar;
        ov.cfg = l->cfg;
        ov.source = lang.get<std::string>();
        o.overrides[param] = std::move(ov);
      }
    }
    if (opts.contains("const")) {
      for (const auto& [param, value] : opts["const"].items()) {
        const flat::ast::Param* p = nullptr;
        for (const auto& q : meta.params) {
          if (q.name == param) p = &q;
        }
        if (!p) {
          return fail(session, FLAT_E_USAGE,
                      "method " + meta.name + " has no parameter '" + param + "'");
        }
        flat::fuzz::Override ov;
        ov.kind = flat::fuzz::Override::Kind::Constant;
        ov.value = arg_value(value, *p);
        o.overrides[param] = std::move(ov);
      }
    }
    flat::front::ResolvedProgram program = instrumented(session);
    program.registry = registry(session);
    flat::fuzz::FuzzReport report = flat::fuzz::fuzz(program, meta.name, o);
    *report_json = dup(report.to_json(with_time).dump(2));
    if (failures) *failures = report.failures.size();
    return FLAT_OK;
  });
}

flat_status flat_languages(flat_session* session, char** json) {
  return guarded(session, [&] {
    if (!json) return fail(session, FLAT_E_USAGE, "null output");
    ordered_json out = ordered_json::array();
    for (const auto& name : registry(session).names()) out.push_back(name);
    *json = dup(out.dump());
    return FLAT_OK;
  });
}

flat_status flat_recognize(flat_session* session, const char* lang,
                           const char* text, int* member) {
  return guarded(session, [&] {
    if (!text || !member) return fail(session, FLAT_E_USAGE, "null argument");
    *member = flat::parse::recognize(cfg(session, lang), flat::from_utf8(text))
                  ? 1
                  : 0;
    return FLAT_OK;
  });
}

flat_status flat_parse_tree(flat_session* session, const char* lang,
                            const char* text, char** tree_json) {
  return guarded(session, [&] {
    if (!text || !tree_json) return fail(session, FLAT_E_USAGE, "null argument");
    flat::parse::DerivationTree tree =
        flat::parse::parse_tree(cfg(session, lang), flat::from_utf8(text));
    *tree_json = dup(flat::parse::tree_to_json(tree, 2));
    return FLAT_OK;
  });
}

flat_status flat_select(flat_session* session, const char* lang,
                        const char* xpath, const char* text, int all,
                        char** json) {
  return guarded(session, [&] {
    if (!xpath || !text || !json) {
      return fail(session, FLAT_E_USAGE, "null argument");
    }
    const flat::grammar::CoreCFG& g = cfg(session, lang);
    flat::xpath::XPath path = flat::xpath::parse_xpath(xpath);
    path.lang = lang;
    flat::xpath::check_labels(path, g);
    flat::parse::DerivationTree tree =
        flat::parse::parse_tree(g, flat::from_utf8(text));
    if (all) {
      ordered_json out = ordered_json::array();
      for (const auto& t : flat::xpath::select_all(tree, path)) {
        out.push_back(flat::to_utf8(t));
      }
      *json = dup(out.dump());
    } else {
      *json = dup(ordered_json(flat::to_utf8(flat::xpath::select_unique(tree, path)))
                      .dump());
    }
    return FLAT_OK;
  });
}

flat_status flat_generate(flat_session* session, const char* lang,
                          size_t count, uint64_t seed, int max_depth,
                          char** json) {
  return guarded(session, [&] {
    if (!json) return fail(session, FLAT_E_USAGE, "null output");
    const flat::grammar::CoreCFG& g = cfg(session, lang);
    int depth = max_depth > 0 ? max_depth : flat::fuzz::default_max_depth(g);
    ordered_json out = ordered_json::array();
    for (size_t i = 0; i < count; ++i) {
      flat::fuzz::Rng rng(flat::fuzz::mix_seed(seed, i));
      out.push_back(flat::to_utf8(flat::fuzz::generate(g, rng, depth)));
    }
    *json = dup(out.dump());
    return FLAT_OK;
  });
}

}  // extern "C"
