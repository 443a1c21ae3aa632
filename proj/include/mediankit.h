/* mediankit — exact computation on finite median algebras, median metric
 * spaces and measured wall spaces.
 *
 * All functions return mdk_status; every status other than MDK_OK leaves a
 * human-readable message in mdk_last_error() (thread-local). Output
 * documents and strings are owned by the caller and released with
 * mdk_document_free / mdk_string_free.
 *
 * Documents are JSON, format_version "1":
 *   algebra       {"kind":"algebra","points":[...],"median":{"table":...}}
 *                 or {"median":{"edges":[[a,b],...]}}
 *   median_space  algebra fields plus {"dist":[["p/q",...],...]}
 *   wall_space    {"kind":"wall_space","points":[...],
 *                  "walls":[{"side":[...],"weight":"p/q"},...]}
 *   report        {"kind":"report","report":{...}}
 * Emission is canonical: equal documents produce equal bytes.
 */

#ifndef MEDIANKIT_H
#define MEDIANKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mdk_status {
    MDK_OK = 0,
    /* a checked property failed; the report output carries the witness */
    MDK_ERR_CHECK = 1,
    /* malformed documents, schema violations, bad arguments */
    MDK_ERR_USAGE = 2,
    /* a configurable size guard refused the operation */
    MDK_ERR_GUARD = 3,
    MDK_ERR_INTERNAL = 4
} mdk_status;

typedef struct mdk_document mdk_document;

const char* mdk_version(void);

/* message for the most recent failure on this thread; empty on success */
const char* mdk_last_error(void);

mdk_status mdk_document_parse(const char* text, mdk_document** out);
void mdk_document_free(mdk_document* doc);

/* "algebra", "median_space", "wall_space" or "report" */
const char* mdk_document_kind(const mdk_document* doc);

mdk_status mdk_document_emit(const mdk_document* doc, char** out_text);
mdk_status mdk_document_render_text(const mdk_document* doc, char** out_text);
void mdk_string_free(char* text);

/* Operations on algebra / median_space documents. A guard value of 0 keeps
 * the defaults (24 walls for ultrafilter enumeration, 64 points for the
 * zero-completion); nonzero overrides both bounds. Report-producing calls
 * set the output on MDK_OK and on MDK_ERR_CHECK, whose report then carries
 * the failure witnesses. */

mdk_status mdk_validate(const mdk_document* doc, mdk_document** report);
mdk_status mdk_halfspaces(const mdk_document* doc, mdk_document** report);
mdk_status mdk_rank(const mdk_document* doc, uint32_t* rank);
mdk_status mdk_convex_hull(const mdk_document* doc, const uint32_t* points,
                           size_t count, mdk_document** report);
mdk_status mdk_gate(const mdk_document* doc, uint32_t point, const uint32_t* set,
                    size_t count, uint32_t* gate);

/* minimum chain cover of the halfspaces separating two points */
mdk_status mdk_dilworth_chains(const mdk_document* doc, uint32_t from, uint32_t to,
                               mdk_document** report);

/* exact l1 chain coordinates on the interval between two points */
mdk_status mdk_l1_embed(const mdk_document* doc, uint32_t from, uint32_t to,
                        mdk_document** report);

mdk_status mdk_wall_weights(const mdk_document* doc, mdk_document** report);

/* median space of all ultrafilters of a wall_space document */
mdk_status mdk_medianize(const mdk_document* doc, uint64_t guard,
                         mdk_document** space);

mdk_status mdk_double_dual(const mdk_document* doc, uint64_t guard,
                           mdk_document** report);
mdk_status mdk_zero_completion(const mdk_document* doc, uint64_t guard,
                               mdk_document** report);

/* spec_json: {"family":"hypercube","k":3}
 *            {"family":"path","n":5,"weights":["1","2",...]}
 *            {"family":"grid","rows":3,"cols":4}
 *            {"family":"tree","edges":[[0,1,"3/2"],...]}
 *            {"family":"staircase","k":4}
 *            {"family":"random_subalgebra","n":8,"m":5,"seed":42}
 *            {"family":"tripod"}                                        */
mdk_status mdk_generate(const char* spec_json, mdk_document** out);

/* Full statement suite. doc may be NULL for the built-in corpus; filter may
 * be NULL or a statement id. The scorecard is emitted deterministically. */
mdk_status mdk_check(const mdk_document* doc, const char* filter, uint64_t guard,
                     mdk_document** scorecard);

mdk_status mdk_demo_staircase(uint32_t k_max, mdk_document** report);

#ifdef __cplusplus
}
#endif

#endif /* MEDIANKIT_H */
