/* C ABI for the braidkit symbolic engine.
 *
 * Hand-written fallback header; when cbindgen is installed the build script
 * regenerates this file from crates/ffi/src/lib.rs. Every char* returned by
 * the library is owned by the caller and must be released with
 * bk_string_free; structure handles with bk_structure_free.
 */
#ifndef BRAIDKIT_H
#define BRAIDKIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle to a (braided) Hopf structure. */
typedef struct bk_structure bk_structure;

/* Status codes returned by every fallible entry point. */
#define BK_OK 0
#define BK_ERR_NULL 1
#define BK_ERR_UTF8 2
#define BK_ERR_UNKNOWN_NAME 3
#define BK_ERR_PARSE 4
#define BK_ERR_MATH 5
#define BK_ERR_PANIC 6

/* Message for the most recent failure on this thread; empty string if none.
 * The pointer stays valid until the next library call on the same thread. */
const char *bk_last_error(void);

/* Release a string returned by this library. Null is a no-op. */
void bk_string_free(char *s);

/* JSON catalog of shipped names, grouped by kind. */
int bk_catalog(char **out);

/* Open a catalog structure by name. */
int bk_structure_open(const char *name, bk_structure **out);

/* Parse a structure document (the same text format the CLI reads). */
int bk_structure_parse(const char *text, bk_structure **out);

/* Release a structure handle. Null is a no-op. */
void bk_structure_free(bk_structure *h);

/* Serialize the structure back to its document text. */
int bk_structure_write(const bk_structure *h, char **out);

/* Check one axiom (or all applicable ones when axiom is null) at the given
 * word-length bound. *holds is 1 when every check passes, 0 otherwise;
 * report_json (optional) receives the full structured report. */
int bk_structure_check(const bk_structure *h,
                       const char *axiom,
                       size_t max_word_len,
                       int *holds,
                       char **report_json);

/* Check that a catalog coaction is an algebra homomorphism into the named
 * coacted presentation. */
int bk_comodule_algebra_check(const char *coaction_name,
                              const char *coacted,
                              size_t max_word_len,
                              int *holds);

/* Run the three-part verification of a catalog transmutation table. */
int bk_transmutation_check(const char *name, int *holds);

#ifdef __cplusplus
}
#endif

#endif /* BRAIDKIT_H */
