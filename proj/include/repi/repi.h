/* repi — entropy-power inequality laboratory, C interface.
 *
 * All functions return a repi_status; on failure repi_last_error() carries a
 * human-readable message for the calling thread. Handles are opaque and must
 * be released with their matching *_free function. Strings returned through
 * out-parameters are heap-allocated and released with repi_string_free.
 */
#ifndef REPI_H
#define REPI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum repi_status {
  REPI_OK = 0,
  REPI_ERR_INVALID = 1,  /* bad argument or precondition violation */
  REPI_ERR_BUDGET = 2,   /* grid or output exceeds the cell budget */
  REPI_ERR_NUMERIC = 3,  /* non-finite values or lost mass */
  REPI_ERR_PARSE = 4,    /* malformed JSON or config validation failure */
  REPI_ERR_INTERNAL = 5
} repi_status;

const char* repi_version(void);
const char* repi_last_error(void);
void repi_string_free(char* s);

/* ---- densities ---------------------------------------------------- */

typedef struct repi_density repi_density;

/* family spec, e.g. {"family":"gaussian","mean":0,"variance":1}
 *                   {"family":"uniform","lo":0,"hi":1}
 *                   {"family":"exponential","rate":1}
 *                   {"family":"laplace","scale":1}
 *                   {"family":"cauchy","scale":1,"box_halfwidth":20}
 *                   {"family":"mixture","weights":[...],"components":[...]} */
repi_status repi_density_from_json(const char* family_json,
                                   repi_density** out);
void repi_density_free(repi_density* d);

/* grid diagnostics at resolution n (n <= 0 picks the default) */
typedef struct repi_density_stats {
  double mass;
  double mean;
  double variance;
  double sup;
  double mass_defect;
  int truncated;
} repi_density_stats;
repi_status repi_density_stats_get(const repi_density* d, long n,
                                   repi_density_stats* out);

/* entropy order p in (0, inf]; pass INFINITY for the sup order.
 * mode: 0 = closed form when available, grid otherwise
 *       1 = force grid evaluation
 *       2 = closed form only (fails when unavailable) */
repi_status repi_renyi_entropy(const repi_density* d, double p, int mode,
                               long n, double* out_nats);
repi_status repi_entropy_power(const repi_density* d, double p, int mode,
                               long n, double* out);

/* density of X + Y, or of sqrt(t) X + sqrt(1-t) Y when 0 <= t <= 1 is
 * given (pass a negative t for the plain convolution) */
repi_status repi_convolve(const repi_density* x, const repi_density* y,
                          double t, long n, repi_density** out);

/* ---- convolution-exponent machinery -------------------------------- */

repi_status repi_young_constant(double p, double q, double r, double* out);

/* maximizes the sharp-constant expression over the exponent surface for a
 * split a + b = 1 - 1/p; certifies max >= 1 - 1/p */
repi_status repi_lemma_search(double a, double b, double p, double* out_max,
                              double* out_q, double* out_r);

typedef struct repi_cell {
  double p;
  double alpha;
  double t;
  double lhs;
  double rhs;
  double ratio;
  double refinement;
  int pass;
} repi_cell;

/* entropy-power inequality cell; t < 0 checks the unweighted form */
repi_status repi_epi_check(const repi_density* x, const repi_density* y,
                           double p, double alpha, double t, long n,
                           int refine, repi_cell* out);

/* ---- Gaussian bosonic states ---------------------------------------- */

typedef struct repi_state repi_state;

/* state spec: {"kind":"vacuum","modes":1}
 *             {"kind":"thermal","nu":3,"modes":1}
 *             {"kind":"squeezed","r":0.5}
 *             {"kind":"random","modes":2,"seed":7,"temperature":1.0}
 *             {"kind":"explicit","mean":[...],"cov":[[...],...]} */
repi_status repi_state_from_json(const char* state_json, repi_state** out);
void repi_state_free(repi_state* s);

repi_status repi_state_symplectic_spectrum(const repi_state* s, double* buf,
                                           int capacity, int* count);
repi_status repi_quantum_entropy(const repi_state* s, double p, double* out);
repi_status repi_qrepi_check(const repi_state* x, const repi_state* y,
                             double tau, double p, double kappa,
                             repi_cell* out);

/* ---- thermodynamic identity ------------------------------------------ */

/* harmonic-oscillator phase-space check of the free-energy route to the
 * entropy of order T0/T; n is the per-axis grid resolution */
repi_status repi_thermo_check(double t_over_t0, long n, double box_halfwidth,
                              double* out_t0, double* out_entropy,
                              double* out_free_energy_form);

/* ---- experiment sweeps ------------------------------------------------ */

typedef struct repi_report repi_report;

repi_status repi_sweep_run(const char* config_json, repi_report** out);
void repi_report_free(repi_report* r);

typedef struct repi_summary {
  unsigned long long cell_count;
  unsigned long long violation_count;
  double min_ratio;
  double max_refinement;
  double wall_seconds;
} repi_summary;
repi_status repi_report_stats(const repi_report* r, repi_summary* out);

/* format: 0 = json, 1 = csv. canonical != 0 zeroes the timestamp and wall
 * time so identical configurations emit byte-identical documents */
repi_status repi_report_emit(const repi_report* r, int format, int canonical,
                             char** out_text);

/* built-in configurations mirroring the command-line defaults:
 * kind: 0 weighted, 1 unweighted, 2 quantum, 3 pinf alpha_one,
 *       4 pinf alpha_schedule */
repi_status repi_default_config(int kind, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REPI_H */
