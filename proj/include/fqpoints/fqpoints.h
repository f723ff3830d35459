#ifndef FQPOINTS_FQPOINTS_H
#define FQPOINTS_FQPOINTS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FQP_API __declspec(dllexport)
#else
#define FQP_API __attribute__((visibility("default")))
#endif

typedef enum fqp_status {
  FQP_OK = 0,
  FQP_HARD_VIOLATION = 1, /* a HARD bound or identity failed */
  FQP_VALIDATION = 2,     /* malformed input or violated precondition */
  FQP_BUDGET = 3,         /* enumeration would exceed the budget */
  FQP_INTERNAL = 4
} fqp_status;

typedef struct fqp_session fqp_session;
typedef struct fqp_variety fqp_variety;

FQP_API const char* fqp_version(void);

FQP_API fqp_status fqp_session_new(fqp_session** out);
FQP_API void fqp_session_free(fqp_session* s);

/* Message for the last non-OK status on this session; never NULL. */
FQP_API const char* fqp_last_error(const fqp_session* s);

/*
 * Session options, all given as text:
 *   field        "p" or "p^k"; repeatable via comma-separated list
 *   spec         path to a variety spec document
 *   spec-text    the document itself
 *   catalog      comma-separated catalog entry names
 *   budget, ext-level, seed, seeds, workers, out, format (csv|json)
 *   n, r, s, degrees (comma-separated)   shape for the bounds command
 *   d, vs-s, fixed (comma-separated)     value-set family
 *   inject-fault (0|1)                   harness self-test
 */
FQP_API fqp_status fqp_session_set(fqp_session* s, const char* key, const char* value);

/*
 * Runs one of: count, verify, bounds, bertini-audit, valueset, catalog-list.
 * Report files go to the "out" directory when set. The rendered reports are
 * available from fqp_output afterwards.
 */
FQP_API fqp_status fqp_run(fqp_session* s, const char* command);
FQP_API const char* fqp_output(const fqp_session* s);
FQP_API size_t fqp_output_file_count(const fqp_session* s);
FQP_API const char* fqp_output_file(const fqp_session* s, size_t i);

/* Direct access to a single variety. */
FQP_API fqp_status fqp_variety_from_spec(fqp_session* s, const char* spec_text, const char* field,
                                         fqp_variety** out);
FQP_API fqp_status fqp_variety_from_catalog(fqp_session* s, const char* name, const char* field,
                                            fqp_variety** out);
FQP_API void fqp_variety_free(fqp_variety* v);
FQP_API fqp_status fqp_count(fqp_session* s, const fqp_variety* v, uint64_t* total, uint64_t* smooth,
                             uint64_t* singular);

#ifdef __cplusplus
}
#endif

#endif
