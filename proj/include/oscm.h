#ifndef OSCM_H
#define OSCM_H

/* C interface to the one-sided crossing minimization solver.
 *
 * Every fallible call returns a status code; on failure a human-readable
 * message is available from oscm_last_error() until the next failure on the
 * same thread. Handles are created by the library and released with the
 * matching *_free function; freeing NULL is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    OSCM_OK = 0,
    OSCM_ERR_PARSE = 1,    /* malformed input text or unreadable file */
    OSCM_ERR_INVALID = 2,  /* bad argument: NULL handle, wrong size, not a permutation */
    OSCM_ERR_INTERNAL = 3  /* solver invariant violation or allocation failure */
};

typedef struct oscm_instance oscm_instance;
typedef struct oscm_result oscm_result;

/* message for the most recent failure on this thread; never NULL */
const char* oscm_last_error(void);

/* --- instances ------------------------------------------------------- */

/* parses `p ocr` text (len bytes, need not be NUL-terminated) */
int oscm_parse(const char* text, size_t len, oscm_instance** out);
int oscm_parse_file(const char* path, oscm_instance** out);
void oscm_instance_free(oscm_instance* inst);

uint32_t oscm_n_fixed(const oscm_instance* inst); /* fixed-layer size n0 */
uint32_t oscm_n_free(const oscm_instance* inst);  /* free-layer size n1 */
uint64_t oscm_n_edges(const oscm_instance* inst);

/* crossings of the ordering given by original free-layer labels
 * (n0+1 .. n0+n1, leftmost first); OSCM_ERR_INVALID unless `labels` is a
 * permutation of those labels with n == n1 */
int oscm_count_crossings(const oscm_instance* inst, const uint32_t* labels, uint32_t n,
                         uint64_t* out);

/* --- solving ---------------------------------------------------------- */

typedef struct oscm_options {
    uint64_t seed;
    double time_limit_s;          /* <= 0: unlimited */
    int heuristic_only;           /* nonzero: skip the exact search */
    uint32_t local_search_window; /* 0: off; >= 2 runs the windowed pass */
    uint64_t restarts;            /* randomized heuristic restarts */
} oscm_options;

oscm_options oscm_options_default(void);

/* runs the solver; `options` may be NULL for defaults. A timeout is not an
 * error: the result carries the incumbent with proven_optimal == 0 */
int oscm_solve(const oscm_instance* inst, const oscm_options* options, oscm_result** out);
void oscm_result_free(oscm_result* result);

/* --- results ---------------------------------------------------------- */

uint64_t oscm_result_crossings(const oscm_result* result);
int oscm_result_proven_optimal(const oscm_result* result);
uint64_t oscm_result_lower_bound(const oscm_result* result);
uint64_t oscm_result_heuristic_cost(const oscm_result* result);
uint64_t oscm_result_nodes(const oscm_result* result);
uint64_t oscm_result_cuts(const oscm_result* result);
uint64_t oscm_result_lp_solves(const oscm_result* result);
double oscm_result_wall_ms(const oscm_result* result);

uint64_t oscm_result_reduced_isolated(const oscm_result* result);
uint64_t oscm_result_split_parts(const oscm_result* result);
uint64_t oscm_result_fixed_zero(const oscm_result* result);
uint64_t oscm_result_fixed_dominance(const oscm_result* result);
uint64_t oscm_result_fixed_bound(const oscm_result* result);
uint64_t oscm_result_fixed_transitive(const oscm_result* result);

/* writes the ordering as original labels (n0+1 .. n0+n1, leftmost first)
 * into out[0..n); OSCM_ERR_INVALID unless n == n1 */
int oscm_result_ordering(const oscm_result* result, uint32_t* out, uint32_t n);

/* solution in the output format (one label per line); free with
 * oscm_text_free */
int oscm_result_solution_text(const oscm_result* result, char** out);
void oscm_text_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
