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

// flatc: command-line driver over the FLAT-CORE C interface.
//
// Exit codes: 0 success, 1 usage, syntax or name error, 2 static or
// runtime type error, contract error, string outside a language or failed
// selection, 3 fuzz failures.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flat/flat.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitType = 2;
constexpr int kExitFuzz = 3;

using Session = std::unique_ptr<flat_session, decltype(&flat_session_free)>;

Session new_session() { return Session(flat_session_new(), &flat_session_free); }

std::string take(char* s) {
  std::string out = s ? s : "";
  flat_string_free(s);
  return out;
}

int exit_code(flat_status status) {
  switch (status) {
    case FLAT_OK: return kExitOk;
    case FLAT_E_TYPE:
    case FLAT_E_RUNTIME:
    case FLAT_E_NOT_IN_LANGUAGE:
    case FLAT_E_SELECT: return kExitType;
    default: return kExitUsage;
  }
}

// Prints the session error and maps the status to an exit code.
int report(const Session& s, flat_status status) {
  std::string message = flat_session_error(s.get());
  std::cerr << message;
  if (!message.empty() && message.back() != '\n') std::cerr << "\n";
  return exit_code(status);
}

bool read_text(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

std::string stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Registers a grammar file under its file stem; returns the name or "".
std::string add_grammar_file(const Session& s, const std::string& path,
                             int& code) {
  std::string rules;
  if (!read_text(path, rules)) {
    std::cerr << "cannot read '" << path << "'\n";
    code = kExitUsage;
    return "";
  }
  std::string name = stem(path);
  flat_status st = flat_session_add_grammar(s.get(), name.c_str(), rules.c_str());
  if (st != FLAT_OK) {
    code = report(s, st);
    return "";
  }
  return name;
}

// Loads and compiles `files`. Returns FLAT_OK or prints the failure.
int load(const Session& s, const std::vector<std::string>& files) {
  for (const auto& f : files) {
    flat_status st = flat_session_add_file(s.get(), f.c_str());
    if (st != FLAT_OK) return report(s, st);
  }
  flat_status st = flat_session_compile(s.get());
  if (st != FLAT_OK) return report(s, st);
  return kExitOk;
}

uint64_t default_seed() {
  const char* env = std::getenv("FLATC_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    return 0;
  }
}

struct Options {
  std::vector<std::string> files;
  std::string method;
  std::string args = "[]";
  bool no_instrument = false;
  size_t num = 1000;
  size_t gen_num = 10;
  uint64_t seed = 0;
  int max_depth = 0;
  int max_attempts = 1000;
  std::vector<std::string> using_;
  std::vector<std::string> consts;
  std::string json_out;
  bool no_time = false;
  bool json = false;
  std::string lang;
  std::string grammar;
  std::string text;
  std::string input;
  std::string xpath;
  bool all = false;
};

int cmd_check(const Options& o) {
  Session s = new_session();
  int code = load(s, o.files);
  if (code == kExitOk) std::cout << "ok\n";
  return code;
}

int cmd_instrument(const Options& o) {
  Session s = new_session();
  if (int code = load(s, o.files)) return code;
  char* out = nullptr;
  flat_status st = flat_instrument(s.get(), &out);
  if (st != FLAT_OK) return report(s, st);
  std::cout << take(out);
  return kExitOk;
}

int cmd_run(const Options& o) {
  Session s = new_session();
  if (int code = load(s, o.files)) return code;
  char* out = nullptr;
  flat_status st = flat_run(s.get(), o.method.c_str(), o.args.c_str(),
                            o.no_instrument ? 0 : 1, &out);
  if (st != FLAT_OK) {
    if (o.json && st == FLAT_E_RUNTIME) {
      std::cout << flat_session_error_json(s.get()) << "\n";
    }
    return report(s, st);
  }
  std::cout << take(out) << "\n";
  return kExitOk;
}

bool split_pair(const std::string& item, std::string& key, std::string& value) {
  size_t eq = item.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  key = item.substr(0, eq);
  value = item.substr(eq + 1);
  return true;
}

int cmd_fuzz(const Options& o) {
  Session s = new_session();
  if (int code = load(s, o.files)) return code;
  nlohmann::ordered_json opts;
  opts["num"] = o.num;
  opts["seed"] = o.seed;
  opts["max_depth"] = o.max_depth;
  opts["max_attempts"] = o.max_attempts;
  opts["time"] = !o.no_time;
  for (const auto& item : o.using_) {
    std::string param, path;
    if (!split_pair(item, param, path)) {
      std::cerr << "--using expects param=grammarfile, got '" << item << "'\n";
      return kExitUsage;
    }
    int code = kExitOk;
    std::string name = add_grammar_file(s, path, code);
    if (name.empty()) return code;
    opts["using"][param] = name;
  }
  for (const auto& item : o.consts) {
    std::string param, value;
    if (!split_pair(item, param, value)) {
      std::cerr << "--const expects param=<json>, got '" << item << "'\n";
      return kExitUsage;
    }
    try {
      opts["const"][param] = nlohmann::ordered_json::parse(value);
    } catch (const std::exception&) {
      std::cerr << "--const " << param << ": invalid JSON '" << value << "'\n";
      return kExitUsage;
    }
  }
  char* out = nullptr;
  size_t failures = 0;
  flat_status st = flat_fuzz(s.get(), o.method.c_str(), opts.dump().c_str(),
                             &out, &failures);
  if (st != FLAT_OK) return report(s, st);
  std::string json = take(out);
  if (!o.json_out.empty()) {
    std::ofstream file(o.json_out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write '" << o.json_out << "'\n";
      return kExitUsage;
    }
    file << json << "\n";
  }
  if (o.json) {
    std::cout << json << "\n";
  } else {
    auto r = nlohmann::ordered_json::parse(json);
    std::cout << "method " << r["method"].get<std::string>() << ": "
              << r["executed"] << " executed, " << r["discarded"]
              << " discarded, " << r["passes"] << " passed, " << failures
              << " failed (seed " << r["seed"] << ")\n";
    for (const auto& f : r["failures"]) {
      std::cout << "  #" << f["index"] << " inputs " << f["inputs"].dump()
                << ": " << f["error"]["kind"].get<std::string>();
      if (!f["error"]["expected"].is_null()) {
        std::cout << " expected " << f["error"]["expected"].get<std::string>();
      }
      std::cout << " actual " << f["error"]["actual"].dump() << "\n";
    }
  }
  return failures > 0 ? kExitFuzz : kExitOk;
}

// Session with the program files (if any) and an optional grammar file;
// sets `lang` to the grammar's name when no language was named.
int language_session(const Options& o, Session& s, std::string& lang) {
  if (!o.files.empty()) {
    if (int code = load(s, o.files)) return code;
  }
  lang = o.lang;
  if (!o.grammar.empty()) {
    int code = kExitOk;
    std::string name = add_grammar_file(s, o.grammar, code);
    if (name.empty()) return code;
    if (lang.empty()) lang = name;
  }
  if (lang.empty()) {
    std::cerr << "a language is required: --lang NAME or --grammar FILE\n";
    return kExitUsage;
  }
  return kExitOk;
}

int subject_text(const Options& o, std::string& text) {
  if (!o.input.empty()) {
    if (!read_text(o.input, text)) {
      std::cerr << "cannot read '" << o.input << "'\n";
      return kExitUsage;
    }
    return kExitOk;
  }
  text = o.text;
  return kExitOk;
}

int cmd_parse(const Options& o) {
  Session s = new_session();
  std::string lang, text;
  if (int code = language_session(o, s, lang)) return code;
  if (int code = subject_text(o, text)) return code;
  char* out = nullptr;
  flat_status st = flat_parse_tree(s.get(), lang.c_str(), text.c_str(), &out);
  if (st != FLAT_OK) return report(s, st);
  std::cout << take(out) << "\n";
  return kExitOk;
}

int cmd_select(const Options& o) {
  Session s = new_session();
  std::string lang, text;
  if (int code = language_session(o, s, lang)) return code;
  if (int code = subject_text(o, text)) return code;
  char* out = nullptr;
  flat_status st = flat_select(s.get(), lang.c_str(), o.xpath.c_str(),
                               text.c_str(), o.all ? 1 : 0, &out);
  if (st != FLAT_OK) return report(s, st);
  std::cout << take(out) << "\n";
  return kExitOk;
}

int cmd_gen(const Options& o) {
  Session s = new_session();
  std::string lang;
  if (int code = language_session(o, s, lang)) return code;
  char* out = nullptr;
  flat_status st =
      flat_generate(s.get(), lang.c_str(), o.gen_num, o.seed, o.max_depth, &out);
  if (st != FLAT_OK) return report(s, st);
  std::string json = take(out);
  if (o.json) {
    std::cout << json << "\n";
  } else {
    for (const auto& line : nlohmann::json::parse(json)) {
      std::cout << line.get<std::string>() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FLAT-CORE toolchain: check, instrument, run and fuzz .flat "
               "programs"};
  app.set_version_flag("--version", flat_version());
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 usage/syntax/name error, 2 type, contract,\n"
      "language or selection error, 3 fuzz failures.");

  Options o;
  o.seed = default_seed();

  auto files = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("files", o.files, ".flat source files")
                    ->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "random seed (default $FLATC_SEED or 0)");
  };
  auto language = [&](CLI::App* cmd) {
    cmd->add_option("--lang", o.lang, "language type name");
    cmd->add_option("--grammar", o.grammar, "standalone grammar file")
        ->check(CLI::ExistingFile);
  };
  auto subject = [&](CLI::App* cmd) {
    cmd->add_option("--text", o.text, "subject string");
    cmd->add_option("--input", o.input, "file holding the subject string")
        ->check(CLI::ExistingFile);
  };

  auto* check = app.add_subcommand("check", "parse, resolve and typecheck");
  files(check, true);

  auto* instrument = app.add_subcommand("instrument",
                                        "print the instrumented program");
  files(instrument, true);

  auto* run = app.add_subcommand("run", "run a method of the instrumented program");
  files(run, true);
  run->add_option("--method", o.method, "method name")->required();
  run->add_option("--args", o.args, "JSON array of arguments");
  run->add_flag("--no-instrument", o.no_instrument,
                "run the original program with entry checks only");
  run->add_flag("--json", o.json, "print runtime errors as JSON on stdout");

  auto* fuzz = app.add_subcommand("fuzz", "test a method on generated inputs");
  files(fuzz, true);
  fuzz->add_option("--method", o.method, "method name")->required();
  fuzz->add_option("--num", o.num, "number of input tuples");
  seed(fuzz);
  fuzz->add_option("--max-depth", o.max_depth, "derivation depth budget");
  fuzz->add_option("--max-attempts", o.max_attempts,
                   "filter attempts per value");
  fuzz->add_option("--using", o.using_, "param=grammarfile producer override");
  fuzz->add_option("--const", o.consts, "param=<json> constant producer");
  fuzz->add_option("--json", o.json_out, "write the JSON report to a file");
  fuzz->add_flag("--print-json", o.json, "print the JSON report");
  fuzz->add_flag("--no-time", o.no_time, "omit wall_time_ms from the report");

  auto* parse = app.add_subcommand("parse", "print the derivation tree of a string");
  files(parse, false);
  language(parse);
  subject(parse);

  auto* select = app.add_subcommand("select", "select substrings by XPath");
  files(select, false);
  language(select);
  subject(select);
  select->add_option("--xpath", o.xpath, "selector chain, e.g. ..host")
      ->required();
  select->add_flag("--all", o.all, "print every match");

  auto* gen = app.add_subcommand("gen", "generate random sentences");
  files(gen, false);
  language(gen);
  gen->add_option("--num", o.gen_num, "number of sentences");
  seed(gen);
  gen->add_option("--max-depth", o.max_depth, "derivation depth budget");
  gen->add_flag("--json", o.json, "print a JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*check) return cmd_check(o);
  if (*instrument) return cmd_instrument(o);
  if (*run) return cmd_run(o);
  if (*fuzz) return cmd_fuzz(o);
  if (*parse) return cmd_parse(o);
  if (*select) return cmd_select(o);
  if (*gen) return cmd_gen(o);
  return kExitUsage;
}
