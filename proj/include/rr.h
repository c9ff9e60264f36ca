/* C interface to the algebra system. All handles are opaque; every call that
 * can fail returns an rr_status. Strings returned through char** are owned by
 * the caller and released with rr_string_free. */
#ifndef RR_H
#define RR_H

#include <stddef.h>

#if defined(_WIN32)
#define RR_API __declspec(dllexport)
#else
#define RR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rr_session rr_session;

typedef enum rr_status {
  RR_OK = 0,
  RR_ERROR = 1,      /* a statement or expression failed */
  RR_USAGE = 2,      /* bad argument or configuration */
  RR_IO = 3,         /* a file could not be read */
  RR_INCOMPLETE = 4, /* rr_feed: the statement continues on the next line */
  RR_NOMEM = 5       /* storage budget exhausted */
} rr_status;

typedef void (*rr_write_fn)(void* user, const char* text, size_t len);

typedef struct rr_config {
  const char* prelude_manifest; /* NULL: use the prelude built into the library */
  int width;                    /* output line width, at least 16 */
  size_t storage_limit;         /* bytes of Lisp storage, 0 for no limit */
  int echo;                     /* echo ";" statements before their results */
} rr_config;

RR_API void rr_config_init(rr_config* cfg);

RR_API rr_status rr_session_new(const rr_config* cfg, rr_session** out);
RR_API void rr_session_free(rr_session* s);

/* Output defaults to stdout and diagnostics to stderr. Passing NULL discards. */
RR_API void rr_set_output(rr_session* s, rr_write_fn fn, void* user);
RR_API void rr_set_error_output(rr_session* s, rr_write_fn fn, void* user);

/* Runs every statement. `errors` (may be NULL) receives the number of failed
 * statements; the result is RR_ERROR when it is nonzero. */
RR_API rr_status rr_run_file(rr_session* s, const char* path, int* errors);
RR_API rr_status rr_run_source(rr_session* s, const char* text, int* errors);

/* Interactive input, a line at a time. */
RR_API rr_status rr_feed(rr_session* s, const char* text, int* errors);
/* Nonzero once END has been read. */
RR_API int rr_ended(const rr_session* s);

/* Evaluates Lisp forms; *result gets the last value printed. */
RR_API rr_status rr_eval_lisp(rr_session* s, const char* text, char** result);
/* Simplifies one algebraic expression; *result gets the printed value on one line. */
RR_API rr_status rr_simplify(rr_session* s, const char* expr, char** result);
/* *equal is 1 when a - b simplifies to zero. */
RR_API rr_status rr_equivalent(rr_session* s, const char* a, const char* b, int* equal);

/* Message for the last failure on this session, or of rr_session_new when s is NULL. */
RR_API const char* rr_last_error(const rr_session* s);
RR_API void rr_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif
