#ifndef CRYSGAR_H
#define CRYSGAR_H

/* C interface to the crystallographic Garside toolkit.
 *
 * A cg_ctx owns one built type: the root-system geometry, the interval
 * monoid, the normal-form engine and the coset-graph toolkit.  All
 * report functions return freshly allocated NUL-terminated strings
 * (JSON, or DOT for the graph drawing); release them with
 * cg_string_free.  Reports are deterministic for a fixed seed.
 */

#if defined(CRYSGAR_BUILD) && defined(__GNUC__)
#define CRYSGAR_API __attribute__((visibility("default")))
#else
#define CRYSGAR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cg_ctx cg_ctx;

typedef enum cg_status {
  CG_OK = 0,           /* success; for verify: every check passed */
  CG_FAIL = 1,         /* verify: at least one check failed */
  CG_UNKNOWN = 2,      /* verify: no failure, but some verdict is unknown */
  CG_EINVAL = 3,       /* invalid argument (null handle, unknown check id) */
  CG_EPARSE = 4,       /* malformed type string or word */
  CG_EUNSUPPORTED = 5, /* recognized but unsupported type */
  CG_EWINDOW = 6,      /* a scan window was too small to certify a value */
  CG_EINTERNAL = 7     /* internal invariant violation */
} cg_status;

/* Short name of a status code: "ok", "fail", "unknown", "invalid",
 * "parse", "unsupported", "window", "internal". */
CRYSGAR_API const char* cg_status_name(cg_status status);

/* Message of the most recent failed call on this handle; pass NULL for
 * the most recent failed cg_ctx_new on this thread.  The pointer stays
 * valid until the next failed call on the same handle (or thread). */
CRYSGAR_API const char* cg_last_error(const cg_ctx* ctx);

/* Build the structure for a type string like "C~2", "D~4", "E~8".
 * On success *out owns the handle; free it with cg_ctx_free. */
CRYSGAR_API cg_status cg_ctx_new(const char* type, cg_ctx** out);
CRYSGAR_API void cg_ctx_free(cg_ctx* ctx);

/* Static description of the built structure (JSON). */
CRYSGAR_API cg_status cg_build_report(cg_ctx* ctx, char** out);

/* Normal form of a word in the input language (JSON).
 * Tokens: r[i,k]  hr[j]  ft[j]  D  D^-1  ib'  ig'  w0  r0  x  */
CRYSGAR_API cg_status cg_normal_form(cg_ctx* ctx, const char* word,
                                     char** out);

/* Axis projection of the vertex of a word (JSON); window 0 picks the
 * default scan window. */
CRYSGAR_API cg_status cg_lambda(cg_ctx* ctx, const char* word, long window,
                                char** out);

/* Run verification checks (JSON report).  ids_csv is a comma-separated
 * list of check ids, or "all" (also the meaning of NULL/empty).  window,
 * power and instances <= 0 select the defaults.  When timings is
 * nonzero the report carries per-check seconds (and is then not
 * reproducible byte for byte). */
CRYSGAR_API cg_status cg_verify(cg_ctx* ctx, const char* ids_csv,
                                unsigned long long seed, long window,
                                long power, long instances, int timings,
                                char** out);

/* Newline-separated list of the known check ids. */
CRYSGAR_API cg_status cg_verify_ids(cg_ctx* ctx, char** out);

/* DOT drawing of the ball of the given radius around the vertex of
 * center_word, in the finite edge window whose vertical atom offsets
 * are clamped to |k| <= atom_k (atom_k <= 0 selects 1). */
CRYSGAR_API cg_status cg_graph_dot(cg_ctx* ctx, const char* center_word,
                                   long radius, long atom_k, char** out);

/* Token grammar of the word language for this handle (plain text). */
CRYSGAR_API cg_status cg_word_help(cg_ctx* ctx, char** out);

CRYSGAR_API void cg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CRYSGAR_H */
