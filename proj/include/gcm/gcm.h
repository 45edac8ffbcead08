/*
 * Copyright 2026 The gcolombeau Authors
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

#ifndef GCM_GCM_H
#define GCM_GCM_H

#include <stddef.h>

#if defined(_WIN32)
#define GCM_API __declspec(dllexport)
#else
#define GCM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Checks of generalized maps between manifolds, driven by JSON descriptions.
 * Every function returning gcm_status sets a thread-local message readable
 * through gcm_last_error() when it fails. Strings returned by accessors are
 * owned by the object they came from. */

typedef enum gcm_status {
  GCM_OK = 0,
  GCM_ERR_NULL_ARGUMENT = 1,
  GCM_ERR_INVALID_ARGUMENT = 2,
  GCM_ERR_PARSE = 3,          /* malformed JSON text */
  GCM_ERR_SPEC = 4,           /* well-formed JSON that does not describe valid objects */
  GCM_ERR_DOMAIN = 5,         /* numerical domain error (NaN, division by zero) */
  GCM_ERR_GEOMETRY = 6,       /* chart, overlap, support or base-point mismatch */
  GCM_ERR_TYPE_MISMATCH = 7,  /* incompatible bundles, tensor types or missing fiber metric */
  GCM_ERR_TOO_FEW_SAMPLES = 8,
  GCM_ERR_INTERNAL = 9
} gcm_status;

typedef enum gcm_verdict { GCM_PASS = 0, GCM_FAIL = 1, GCM_INCONCLUSIVE = 2 } gcm_verdict;

typedef struct gcm_context gcm_context;
typedef struct gcm_result gcm_result;

GCM_API const char* gcm_version(void);
GCM_API const char* gcm_status_string(gcm_status status);
/* Message of the last failing call on this thread, or "". */
GCM_API const char* gcm_last_error(void);

/* config_json may be NULL for defaults; unknown keys are rejected. */
GCM_API gcm_status gcm_context_create(const char* config_json, gcm_context** out);
GCM_API void gcm_context_destroy(gcm_context* ctx);
/* Effective configuration as JSON. */
GCM_API const char* gcm_context_config(const gcm_context* ctx);

/* Names of the commands accepted by gcm_run_check, one JSON array. */
GCM_API const char* gcm_commands(void);

/* Runs command (check-moderate, check-cbounded, check-equiv, check-equiv0,
 * check-single-chart, eval-point, compose, tangent, vb-check, vb-eval,
 * tensor-insert) on the objects and "args" of spec_json. */
GCM_API gcm_status gcm_run_check(gcm_context* ctx, const char* command, const char* spec_json, gcm_result** out);

GCM_API gcm_status gcm_gallery_list(gcm_context* ctx, gcm_result** out);
/* Runs the named gallery entries, or all of them when count is 0. The
 * result verdict is GCM_PASS iff every entry reproduces its expectations. */
GCM_API gcm_status gcm_gallery_run(gcm_context* ctx, const char* const* names, size_t count, gcm_result** out);

/* Renders a verdict record or gallery run as a plain-text table. */
GCM_API gcm_status gcm_report(gcm_context* ctx, const char* record_json, gcm_result** out);

GCM_API gcm_verdict gcm_result_verdict(const gcm_result* r);
GCM_API const char* gcm_result_json(const gcm_result* r);
GCM_API const char* gcm_result_text(const gcm_result* r);
GCM_API size_t gcm_result_series_count(const gcm_result* r);
GCM_API const char* gcm_result_series_name(const gcm_result* r, size_t i);
GCM_API const char* gcm_result_series_csv(const gcm_result* r, size_t i);
GCM_API void gcm_result_destroy(gcm_result* r);

#ifdef __cplusplus
}
#endif

#endif /* GCM_GCM_H */
