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

/*
 * C interface of the FLAT-CORE toolchain.
 *
 * A session collects `.flat` sources and standalone grammars, compiles
 * them, and answers queries. Strings returned through `char**` are owned
 * by the caller and released with flat_string_free(). Every function
 * returns a status; on failure flat_session_error() describes it.
 * Sessions are not thread-safe; distinct sessions are independent.
 */

#ifndef FLAT_FLAT_H_
#define FLAT_FLAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FLAT_API __declspec(dllexport)
#else
#define FLAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct flat_session flat_session;

typedef enum flat_status {
  FLAT_OK = 0,
  FLAT_E_USAGE = 1,           /* bad argument, unreadable file, bad JSON */
  FLAT_E_SYNTAX = 2,          /* program or grammar syntax */
  FLAT_E_GRAMMAR = 3,         /* grammar validation */
  FLAT_E_RESOLVE = 4,         /* unknown or duplicate names */
  FLAT_E_TYPE = 5,            /* static diagnostics */
  FLAT_E_RUNTIME = 6,         /* runtime type or contract error */
  FLAT_E_NOT_IN_LANGUAGE = 7, /* subject rejected by the grammar */
  FLAT_E_SELECT = 8,          /* unknown label, no match, ambiguous match */
  FLAT_E_NO_PRODUCER = 9,
  FLAT_E_ATTEMPTS = 10,       /* filter rejected every generated value */
  FLAT_E_STATE = 11,          /* operation needs a compiled session */
  FLAT_E_INTERNAL = 12
} flat_status;

FLAT_API const char* flat_version(void);
FLAT_API const char* flat_status_name(flat_status status);
FLAT_API void flat_string_free(char* s);

FLAT_API flat_session* flat_session_new(void);
FLAT_API void flat_session_free(flat_session* session);

/* Description of the last failure; empty after a success. */
FLAT_API const char* flat_session_error(const flat_session* session);

/* Last runtime error as {"kind","location","expected","actual"}, or "". */
FLAT_API const char* flat_session_error_json(const flat_session* session);

/* Sources are compiled in the order they were added. */
FLAT_API flat_status flat_session_add_source(flat_session* session,
                                             const char* name,
                                             const char* text);
FLAT_API flat_status flat_session_add_file(flat_session* session,
                                           const char* path);

/* Registers a standalone grammar (rules only) as language `name`. It may
 * reference builtin languages and languages of the compiled program. */
FLAT_API flat_status flat_session_add_grammar(flat_session* session,
                                              const char* name,
                                              const char* rules);

/* Parses, resolves and simple-typechecks the sources. Fails with
 * FLAT_E_TYPE when there are diagnostics, one per line in
 * flat_session_error(). */
FLAT_API flat_status flat_session_compile(flat_session* session);

/* Pretty-printed program, as parsed or after instrumentation. */
FLAT_API flat_status flat_print_program(flat_session* session, char** out);
FLAT_API flat_status flat_instrument(flat_session* session, char** out);

/* Runs `method` on a JSON array of arguments. With `instrumented` set the
 * instrumented program runs; otherwise only entry checks apply. The
 * result is JSON. Runtime failures return FLAT_E_RUNTIME with the
 * rendered report in flat_session_error(). */
FLAT_API flat_status flat_run(flat_session* session, const char* method,
                              const char* args_json, int instrumented,
                              char** result_json);

/* Fuzzes `method` of the instrumented program. `options_json` may set
 * num, seed, max_depth, max_attempts, time (bool), using ({param: lang})
 * and const ({param: value}). Writes the JSON report and the number of
 * failures. */
FLAT_API flat_status flat_fuzz(flat_session* session, const char* method,
                               const char* options_json, char** report_json,
                               size_t* failures);

/* Language queries over the builtin, program and standalone grammars. */
FLAT_API flat_status flat_languages(flat_session* session, char** json);
FLAT_API flat_status flat_recognize(flat_session* session, const char* lang,
                                    const char* text, int* member);
FLAT_API flat_status flat_parse_tree(flat_session* session, const char* lang,
                                     const char* text, char** tree_json);
/* `all` selects every match (JSON array); otherwise the unique match
 * (JSON string). */
FLAT_API flat_status flat_select(flat_session* session, const char* lang,
                                 const char* xpath, const char* text, int all,
                                 char** json);
/* JSON array of `count` sentences; `max_depth` 0 picks the default. */
FLAT_API flat_status flat_generate(flat_session* session, const char* lang,
                                   size_t count, uint64_t seed, int max_depth,
                                   char** json);

#ifdef __cplusplus
}
#endif

#endif /* FLAT_FLAT_H_ */
