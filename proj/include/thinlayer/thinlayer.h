/* SPDX-License-Identifier: Apache-2.0 */
#ifndef THINLAYER_THINLAYER_H
#define THINLAYER_THINLAYER_H

#include <stddef.h>

#if defined(TL_BUILDING)
#define TL_API __attribute__((visibility("default")))
#else
#define TL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_CONFIG = 1,        /* bad config file, key or value */
  TL_ERR_INVALID_MODEL = 2, /* coefficients or geometry out of range */
  TL_ERR_PRECONDITION = 3,
  TL_ERR_RESOLUTION = 4,    /* a discretization could not reach its tolerance */
  TL_ERR_RESONANCE = 5,     /* DtN map evaluated at a pole */
  TL_ERR_DEGENERACY = 6,
  TL_ERR_INVALID_CASE = 7,  /* requested expansion does not apply to this point */
  TL_ERR_IO = 8,
  TL_ERR_ARGUMENT = 9,      /* null handle or pointer */
  TL_ERR_INTERNAL = 10
} tl_status;

typedef struct tl_session tl_session;

TL_API const char* tl_version(void);
TL_API const char* tl_status_string(tl_status status);

/* Sessions own a resolved config and the last report. */
TL_API tl_status tl_session_create_from_file(const char* path, tl_session** out);
TL_API tl_status tl_session_create_from_string(const char* text, tl_session** out);
TL_API void tl_session_destroy(tl_session* session);

/* Overrides one setting, key is "section.key", e.g. "sweep.eps". */
TL_API tl_status tl_session_set(tl_session* session, const char* key, const char* value);

/* Canonical config text; valid until the next call on this session. */
TL_API const char* tl_session_config(tl_session* session);

/* command: "limit-spectrum", "predict" or "verify". out_dir NULL writes to the
   configured [output] dir, an empty string skips writing files. exit_status receives 0 (pass or inconclusive) or 1 (a failed
   verdict) when the call returns TL_OK. */
TL_API tl_status tl_session_run(tl_session* session, const char* command, const char* out_dir, int* exit_status);

/* Reports of the last successful run; empty strings before the first. */
TL_API const char* tl_session_report_json(const tl_session* session);
TL_API const char* tl_session_report_csv(const tl_session* session);
TL_API size_t tl_session_warning_count(const tl_session* session);
TL_API const char* tl_session_warning(const tl_session* session, size_t index);

/* Message for the last failed call on this session. */
TL_API const char* tl_session_last_error(const tl_session* session);

/* Message for the last failed create call on this thread. */
TL_API const char* tl_last_create_error(void);

#ifdef __cplusplus
}
#endif

#endif
