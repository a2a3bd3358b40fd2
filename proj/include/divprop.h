/* divprop.h: C interface to the divisible-map propagator library.
 *
 * All functions return a divprop_status; on failure divprop_last_error()
 * holds a message for the calling thread. Strings returned through char**
 * out-parameters are heap-allocated and must be released with
 * divprop_string_free. Handles are opaque and freed with their _free call.
 */

#ifndef DIVPROP_H
#define DIVPROP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DIVPROP_OK = 0,
  DIVPROP_INVALID_ARGUMENT = 1,
  DIVPROP_PARSE_ERROR = 2,
  DIVPROP_DOMAIN_ERROR = 3,
  DIVPROP_CHECK_FAILED = 4,
  DIVPROP_INTERNAL_ERROR = 5
} divprop_status;

typedef struct divprop_transfer divprop_transfer;
typedef struct divprop_model divprop_model;

/* Any field at or below zero falls back to the library default
 * (tol_rank 1e-10, tol_psd 1e-9, tol_mono 1e-8, samples 1000). */
typedef struct {
  double tol_rank;
  double tol_psd;
  double tol_mono;
  unsigned long long seed;
  int samples;
} divprop_options;

const char* divprop_version(void);
const char* divprop_last_error(void);
void divprop_string_free(char* s);
void divprop_default_options(divprop_options* opt);

/* transfer-matrix handles: JSON schema {"dim": d, "t": [[...], ...]} with t
 * a dim^2 x dim^2 real matrix as nested row arrays */
divprop_status divprop_transfer_parse(const char* json, divprop_transfer** out);
void divprop_transfer_free(divprop_transfer* t);
int divprop_transfer_dim(const divprop_transfer* t);
divprop_status divprop_transfer_to_json(const divprop_transfer* t, char** out_json);

/* certificate: trace preservation, complete positivity, rank, kernel and
 * image bases, sampled positivity */
divprop_status divprop_transfer_analyze(const divprop_transfer* t, const divprop_options* opt,
                                        char** out_json);
divprop_status divprop_transfer_min_choi_eig(const divprop_transfer* t, double* out);
divprop_status divprop_transfer_moore_penrose(const divprop_transfer* t, double tol_rank,
                                              divprop_transfer** out);

/* propagator V with V * ts = tt built through the chosen generalized-inverse
 * rule: "auto", "spectral", "moore_penrose", "dual_complement",
 * "kernel_complement" */
divprop_status divprop_propagate(const divprop_transfer* tt, const divprop_transfer* ts,
                                 const char* rule, const divprop_options* opt, char** out_json);

/* model handles: JSON schema {"model": name, parameters...}; names
 * global_attractor, pauli, nondiagonal, phase_covariant */
divprop_status divprop_model_parse(const char* json, divprop_model** out);
void divprop_model_free(divprop_model* m);
divprop_status divprop_model_transfer_at(const divprop_model* m, double t,
                                         divprop_transfer** out);

/* full report for V_{t,s}; search != 0 additionally classifies the
 * trace-preserving propagator family as unique-CPTP / multi-CPTP / none-CPTP */
divprop_status divprop_model_propagate(const divprop_model* m, double s, double t,
                                       const char* rule, int search,
                                       const divprop_options* opt, char** out_json);

/* CSV sweep of quantity in {"rank", "min-choi-eig", "trace-norms"} over grids
 * given as "start:stop:steps"; s_grid may be NULL */
divprop_status divprop_model_sweep(const divprop_model* m, const char* quantity,
                                   const char* t_grid, const char* s_grid, const char* rule,
                                   const divprop_options* opt, char** out_csv);

/* reproduction battery: id in {ex1, ex2, exnon, phasecov, projectors, jordan,
 * discrete}; returns DIVPROP_CHECK_FAILED (with outputs still filled) when
 * any check fails; out_summary may be NULL */
divprop_status divprop_reproduce(const char* id, const divprop_options* opt, char** out_json,
                                 char** out_summary);

#ifdef __cplusplus
}
#endif

#endif /* DIVPROP_H */
