/*
 * adseq - deviation, moment and large-deviation bound evaluation for
 * alpha-dependent sequences, with Monte Carlo verification on
 * intermittent interval maps.
 *
 * C interface of the shared library. All functions return a status code;
 * on failure a thread-local message is available from adseq_last_error().
 * Objects are opaque handles created by adseq_*_create* and released by
 * the matching adseq_*_free. Strings returned through char** outputs are
 * owned by the caller and released with adseq_string_free().
 */
#ifndef ADSEQ_H
#define ADSEQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adseq_status {
    ADSEQ_OK = 0,
    ADSEQ_ERR_INVALID_ARGUMENT = 1,
    ADSEQ_ERR_DOMAIN = 2,     /* argument outside the mathematical domain */
    ADSEQ_ERR_CONFIG = 3,     /* malformed JSON or invalid parameters */
    ADSEQ_ERR_QUADRATURE = 4, /* adaptive integration missed its tolerance */
    ADSEQ_ERR_NOMEM = 5,
    ADSEQ_ERR_INTERNAL = 6,
} adseq_status;

typedef struct adseq_map adseq_map;
typedef struct adseq_observable adseq_observable;
typedef struct adseq_alpha adseq_alpha;
typedef struct adseq_quantile adseq_quantile;
typedef struct adseq_experiment adseq_experiment;

const char* adseq_version(void);
const char* adseq_last_error(void);
void adseq_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

/* Canonical form: sorted keys, minimal whitespace, round-trip numbers. */
adseq_status adseq_config_canonical(const char* json_text, char** out);
/* 16 hex characters plus NUL. Stable across platforms. */
adseq_status adseq_config_hash(const char* json_text, char out_hex[17]);

/* ---- interval maps and orbits ------------------------------------------ */

adseq_status adseq_map_create_lsv(double gamma, adseq_map** out);
adseq_status adseq_map_create_json(const char* json_text, adseq_map** out);
void adseq_map_free(adseq_map* m);
adseq_status adseq_map_step(const adseq_map* m, double x, double* out);

/* use_initial == 0 draws the initial point uniformly from the stream.
 * Emits the burn_in+1 ... burn_in+length iterates. */
adseq_status adseq_orbit_generate(const adseq_map* m, uint64_t seed, uint32_t replica,
                                  int use_initial, double initial_point, uint64_t burn_in,
                                  uint64_t length, double* out);

/* Moving average of i.i.d. standard normals; m-dependent with
 * m = n_weights - 1. */
adseq_status adseq_mdep_sequence(uint64_t seed, uint32_t replica, const double* weights,
                                 size_t n_weights, uint64_t length, double* out);

/* ---- observables ------------------------------------------------------- */

adseq_status adseq_observable_create_json(const char* json_text, adseq_observable** out);
void adseq_observable_free(adseq_observable* f);
adseq_status adseq_observable_eval(const adseq_observable* f, double x, double* out);
/* Quantile-model tag of the observable for a map of the given gamma. */
adseq_status adseq_observable_quantile(const adseq_observable* f, double gamma,
                                       adseq_quantile** out);
adseq_status adseq_estimate_center(const adseq_observable* f, const adseq_map* m,
                                   uint64_t budget, uint64_t seed, double* mean,
                                   double* std_error);

/* ---- dependence coefficients ------------------------------------------- */

adseq_status adseq_alpha_create_power_law(double scale, double gamma, adseq_alpha** out);
adseq_status adseq_alpha_create_json(const char* json_text, adseq_alpha** out);
void adseq_alpha_free(adseq_alpha* a);
adseq_status adseq_alpha_eval(const adseq_alpha* a, uint64_t n, double* out);
/* cap == 0 evaluates the uncapped inverse. */
adseq_status adseq_alpha_inverse(const adseq_alpha* a, double u, uint64_t cap, uint64_t* out);

/* ---- quantile models ---------------------------------------------------- */

/* eps_q <= 0 disables the vanishing factor. */
adseq_status adseq_quantile_create_power_law(double scale, double b, double eps_q,
                                             adseq_quantile** out);
adseq_status adseq_quantile_create_json(const char* json_text, adseq_quantile** out);
void adseq_quantile_free(adseq_quantile* q);
adseq_status adseq_quantile_eval(const adseq_quantile* q, double u, double* out);
/* Generalized inverse of a tail function given as JSON. */
adseq_status adseq_tail_quantile_json(const char* tail_json, double u, double* out);

/* ---- bound evaluation ---------------------------------------------------- */

/* (alpha2^{-1}(u) ∧ n) Q(u); capped == 0 leaves the inverse uncapped. */
adseq_status adseq_r_eval(const adseq_alpha* a2, const adseq_quantile* q, uint64_t n,
                          double u, int capped, double* out);
/* inf{u : R_n(u) <= x}; the result always satisfies R_n(result) <= x. */
adseq_status adseq_r_inverse(const adseq_alpha* a2, const adseq_quantile* q, uint64_t n,
                             double x, double* out);
/* Full grid evaluation driven by the {alpha, quantile, bounds} sections
 * of the config. Returns a JSON report with one named field per term. */
adseq_status adseq_bounds_evaluate_json(const char* config_json, char** report_json);

typedef struct adseq_regime {
    double moment_exponent; /* theta: ||max |S_k|||_p^p of order n^theta */
    int log_factor;         /* n log n boundary case */
    double holder_delta;    /* 1/2 - gamma - b(1-gamma); negative: none */
    double ld_p;            /* 1 / (gamma + b(1-gamma)) */
} adseq_regime;

adseq_status adseq_regime_predict(double gamma, double b, double p, adseq_regime* out);

/* kind: weak_moment | weak_moment_vanishing | strong_moment | longrun_variance */
adseq_status adseq_check_condition(const char* kind, double gamma, double b, double p,
                                   int eps_vanishing, int* holds, double* margin,
                                   double* critical_p);

/* ---- experiments --------------------------------------------------------- */

/* stats: comma-joined subset of moments,tails,clt,hip; NULL or "" uses
 * the sim.stats list from the config. */
adseq_status adseq_experiment_run_json(const char* config_json, const char* stats,
                                       adseq_experiment** out);
void adseq_experiment_free(adseq_experiment* e);
adseq_status adseq_experiment_csv(const adseq_experiment* e, char** out);
adseq_status adseq_experiment_json(const adseq_experiment* e, char** out);

/* ---- statistics helpers --------------------------------------------------- */

adseq_status adseq_sigma2(const double* series, size_t len, uint32_t bandwidth,
                          double* estimate, double* std_error, uint32_t* used_bandwidth);
adseq_status adseq_scaling_fit(const double* n_values, const double* estimates,
                               const double* std_errors, size_t count, int with_log,
                               double* exponent, double* exp_std_error, double* log_coef);
adseq_status adseq_holder_norm(const double* ts, const double* fs, size_t count, double beta,
                               double* seminorm, double* norm, int* approximate);
adseq_status adseq_ks_normal(const double* samples, size_t count, double sigma, double* out);

#ifdef __cplusplus
}
#endif

#endif /* ADSEQ_H */
