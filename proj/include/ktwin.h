/* ktwin: elliptic-curve group orders mod p, GL2 matrix-class densities,
 * twin-prime-style Euler constants, Greaves/Selberg sieve constants, and a
 * streaming prime census that compares the tallies against the predictions.
 *
 * C interface over the C++ core. Every function returns a ktwin_status;
 * results travel through out-parameters. Strings returned through char**
 * are heap-allocated and must be released with ktwin_string_free. Handles
 * are opaque and freed with their matching *_free function.
 */

#ifndef KTWIN_H
#define KTWIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define KTWIN_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define KTWIN_API __attribute__((visibility("default")))
#else
#  define KTWIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ktwin_status {
    KTWIN_OK = 0,
    KTWIN_INTERRUPTED = 1, /* census stopped at the block limit; checkpoint written */
    KTWIN_E_SINGULAR_CURVE = 2,
    KTWIN_E_BAD_REDUCTION = 3,
    KTWIN_E_CAP_EXCEEDED = 4,
    KTWIN_E_NOT_INVERTIBLE = 5,
    KTWIN_E_OUT_OF_RANGE = 6,
    KTWIN_E_OVERFLOW = 7,
    KTWIN_E_NOT_COPRIME = 8,
    KTWIN_E_NOT_SQUAREFREE = 9,
    KTWIN_E_CORRUPT_CHECKPOINT = 10,
    KTWIN_E_MISSING_CHECKPOINTS = 11,
    KTWIN_E_INVALID_ARGUMENT = 12,
    KTWIN_E_IO = 13,
    KTWIN_E_INTERNAL = 14
} ktwin_status;

/* Stable name of a status code, e.g. "CapExceeded". */
KTWIN_API const char* ktwin_status_name(ktwin_status status);

/* Detail message of the most recent failure on this thread ("" if none). */
KTWIN_API const char* ktwin_last_error(void);

KTWIN_API void ktwin_string_free(char* s);

/* ---- elliptic curves --------------------------------------------------- */

typedef struct ktwin_curve ktwin_curve;

KTWIN_API ktwin_status ktwin_curve_new(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6,
                                       ktwin_curve** out);
/* Shared CLI syntax: "a1,a2,a3,a4,a6". */
KTWIN_API ktwin_status ktwin_curve_parse(const char* text, ktwin_curve** out);
KTWIN_API void ktwin_curve_free(ktwin_curve* curve);
KTWIN_API int64_t ktwin_curve_discriminant(const ktwin_curve* curve);

/* |E(F_p)| and the Frobenius trace at a good prime p. */
KTWIN_API ktwin_status ktwin_curve_reduce(const ktwin_curve* curve, uint64_t p, uint64_t* np,
                                          int64_t* ap);
KTWIN_API ktwin_status ktwin_curve_count_naive(const ktwin_curve* curve, uint64_t p, uint64_t* np);
KTWIN_API ktwin_status ktwin_curve_count_bsgs(const ktwin_curve* curve, uint64_t p, uint64_t* np);

/* ---- mod-M_E Galois image ---------------------------------------------- */

typedef struct ktwin_image ktwin_image;

KTWIN_API ktwin_status ktwin_image_full(uint64_t m_e, ktwin_image** out);
/* entries: 4*n_matrices residues a,b,c,d per matrix, all mod m_e. */
KTWIN_API ktwin_status ktwin_image_generators(uint64_t m_e, const uint64_t* entries,
                                              size_t n_matrices, ktwin_image** out);
/* One "a,b;c,d" matrix per line; blank lines and lines starting with '#' skipped. */
KTWIN_API ktwin_status ktwin_image_parse(uint64_t m_e, const char* text, ktwin_image** out);
KTWIN_API void ktwin_image_free(ktwin_image* image);
KTWIN_API ktwin_status ktwin_image_group_size(const ktwin_image* image, uint64_t* out);
KTWIN_API ktwin_status ktwin_image_omega_size(const ktwin_image* image, uint64_t* out);
KTWIN_API ktwin_status ktwin_image_prob_coprime(const ktwin_image* image, int64_t* num,
                                                int64_t* den);

/* ---- GL2 counts --------------------------------------------------------- */

KTWIN_API ktwin_status ktwin_gl2_order(uint64_t n, uint64_t* out);
KTWIN_API ktwin_status ktwin_gl2_count_c(uint64_t n, uint64_t* out);
KTWIN_API ktwin_status ktwin_gl2_count_c_bruteforce(uint64_t n, uint64_t* out);
KTWIN_API ktwin_status ktwin_gl2_density_prime(uint64_t ell, int64_t* num, int64_t* den);
KTWIN_API ktwin_status ktwin_gl2_density_prime_squared(uint64_t ell, int64_t* num, int64_t* den);

/* ---- Euler-product constants -------------------------------------------- */

typedef struct ktwin_constant {
    double value;
    double tail_bound; /* multiplicative half-width: limit in value*(1 +- tail) */
    uint64_t cutoff;
} ktwin_constant;

KTWIN_API ktwin_status ktwin_twin_constant(uint64_t cutoff, ktwin_constant* out);
KTWIN_API ktwin_status ktwin_koblitz_constant(const ktwin_image* image, uint64_t cutoff,
                                              ktwin_constant* out);
/* JSON object {value, interval, tail_bound, cutoff, image_mode}. */
KTWIN_API ktwin_status ktwin_constant_json(const ktwin_image* image, uint64_t cutoff,
                                           char** json_out);

/* ---- sieve constants ----------------------------------------------------- */

KTWIN_API ktwin_status ktwin_r_of_theta(double theta, uint32_t* out);
KTWIN_API ktwin_status ktwin_alpha(double v, double* out);
KTWIN_API ktwin_status ktwin_beta(double v, double* out);
KTWIN_API ktwin_status ktwin_j(double xi, double u, double v, double* out);
KTWIN_API ktwin_status ktwin_lower_bound_constant(double theta, double* out);
KTWIN_API ktwin_status ktwin_upper_bound_constant(double theta, double epsilon, double* out);
/* JSON object {theta, eps, r, xi, U, V, lower_constant, paper_floor,
 * upper_constant, conditions}. */
KTWIN_API ktwin_status ktwin_bounds_json(double theta, double epsilon, char** json_out);

/* ---- census --------------------------------------------------------------*/

typedef struct ktwin_census ktwin_census; /* a completed census report */

typedef struct ktwin_census_config {
    uint64_t x;                   /* census bound, 100 <= x <= 1e15 */
    double theta;                 /* 0 -> 0.5 */
    double epsilon;               /* 0 -> 1e-3 */
    uint64_t constant_cutoff;     /* 0 -> 1e5 */
    uint64_t checkpoint_interval; /* x-units between snapshots; 0 -> default */
    uint64_t block_width;         /* 0 -> 65536 */
    uint32_t threads;             /* 0 -> hardware concurrency */
    uint64_t max_blocks;          /* 0 -> run to completion (testing hook) */
    const char* checkpoint_path;  /* NULL -> no checkpointing */
    const char* dump_csv_path;    /* NULL -> no per-prime dump */
    const uint64_t* ell_probes; /* NULL -> default {2,3,5,7} minus divisors of m_e */
    size_t n_ell_probes;
    const uint64_t* divisor_probes; /* NULL -> default squarefree probes coprime to m_e */
    size_t n_divisor_probes;
} ktwin_census_config;

/* Runs (or resumes) a census. Returns KTWIN_OK with a report handle, or
 * KTWIN_INTERRUPTED (no handle) when max_blocks stopped the run early. */
KTWIN_API ktwin_status ktwin_census_run(const ktwin_curve* curve, const ktwin_image* image,
                                        const ktwin_census_config* config, ktwin_census** out);
KTWIN_API void ktwin_census_free(ktwin_census* census);
KTWIN_API ktwin_status ktwin_census_report_json(const ktwin_census* census, char** json_out);
KTWIN_API ktwin_status ktwin_census_divisor_check(const ktwin_census* census, uint64_t d,
                                                  uint64_t* observed, double* predicted,
                                                  double* residual);
/* CSV "x,pi_twin,prediction,ratio" from a report's checkpointed prefixes. */
KTWIN_API ktwin_status ktwin_plot_csv_from_report(const char* report_json, char** csv_out);

/* ---- self check ---------------------------------------------------------- */

/* Cross-checks closed forms against brute force; returns KTWIN_OK when all
 * pass, KTWIN_E_INTERNAL otherwise. *text_out gets one line per check. */
KTWIN_API ktwin_status ktwin_self_check(char** text_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KTWIN_H */
