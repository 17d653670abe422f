/* uacsp — universal-algebra CSP toolkit, C API.
 *
 * All functions return a uacsp_status. UACSP_OK / UACSP_UNSAT are results;
 * everything else is an error. Out-parameters of type char* are heap strings
 * owned by the caller and released with uacsp_string_free. Handles are opaque
 * and released with their matching _free function.
 */
#ifndef UACSP_H
#define UACSP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uacsp_status {
    UACSP_OK = 0,
    UACSP_UNSAT = 1,
    UACSP_INPUT_ERROR = 2,
    UACSP_RESOURCE_ERROR = 3,
    UACSP_DISAGREEMENT = 4,
    UACSP_INTERNAL_ERROR = 5
} uacsp_status;

typedef struct uacsp_workspace uacsp_workspace;

const char* uacsp_version(void);

void uacsp_string_free(char* s);

/* Parses and validates a workspace document (idempotence, invariance,
 * signature checks). On failure *err carries a diagnostic. */
uacsp_status uacsp_workspace_load(const char* path, uacsp_workspace** out, char** err);
uacsp_status uacsp_workspace_parse(const char* text, uacsp_workspace** out, char** err);
void uacsp_workspace_free(uacsp_workspace* ws);

int uacsp_workspace_algebra_count(const uacsp_workspace* ws);
int uacsp_workspace_instance_count(const uacsp_workspace* ws);

/* Structural report for every algebra: congruence lattice and covers,
 * monolith / subdirect irreducibility, semilattice edges, centralizers over
 * the covering pairs, multiplication term table. */
uacsp_status uacsp_analyze(const uacsp_workspace* ws, char** report, char** err);

/* Decides instance `index`. *sat is 1/0; on SAT, *report carries the
 * verifying assignment as sorted var=value lines. With trace != 0 the
 * reduction steps are appended. With oracle_check != 0 the verdict is
 * cross-checked against the exhaustive oracle and UACSP_DISAGREEMENT is
 * returned on a mismatch. */
uacsp_status uacsp_solve_instance(const uacsp_workspace* ws, int index, int trace, int oracle_check,
                                  char** report, int* sat, char** err);

/* Exhaustive oracle on instance `index` (independent of the solver). */
uacsp_status uacsp_oracle_instance(const uacsp_workspace* ws, int index, char** report, int* sat,
                                   char** err);

/* Seeded random workspace: one idempotent algebra (size x size tables) and
 * one invariant instance with the given shape. */
uacsp_status uacsp_generate(uint64_t seed, int size, int vars, int constraints,
                            char** workspace_text, char** err);

/* Seeded solver-vs-oracle differential run; *report summarizes per-case
 * agreement, and on a mismatch *reproducer (when non-NULL) receives a
 * workspace document reproducing the first failing case. */
uacsp_status uacsp_diff(uint64_t seed, int cases, char** report, char** reproducer, char** err);

#ifdef __cplusplus
}
#endif

#endif /* UACSP_H */
