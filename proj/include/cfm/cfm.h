/*
 * cfm: certified continued fractions, convergents and approximate
 * irrationality measures.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return a cfm_status; on failure the
 * out-parameters are left untouched and cfm_last_error() describes the
 * failure for the calling thread. Strings returned through `const char**`
 * stay valid until the owning handle is freed. Big integers cross the
 * boundary as base-10 strings.
 */
#ifndef CFM_CFM_H_
#define CFM_CFM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CFM_BUILDING_LIBRARY)
#define CFM_API __attribute__((visibility("default")))
#else
#define CFM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfm_status {
  CFM_OK = 0,
  CFM_ERR_INVALID_ARGUMENT = 1,
  CFM_ERR_PARSE = 2,
  CFM_ERR_PRECISION_CAP = 3,
  CFM_ERR_UNCERTIFIED = 4,
  CFM_ERR_OUT_OF_RANGE = 5,
  CFM_ERR_DOMAIN = 6,
  CFM_ERR_NULL_POINTER = 7,
  CFM_ERR_INTERNAL = 8
} cfm_status;

typedef enum cfm_engine {
  CFM_ENGINE_ITER = 0,
  CFM_ENGINE_MATRIX = 1,
  CFM_ENGINE_FAST = 2
} cfm_engine;

typedef struct cfm_budget {
  uint32_t digits;     /* certified decimal digits, >= 1 */
  uint32_t guard;      /* extra working digits */
  uint64_t max_digits; /* hard cap on working digits */
} cfm_budget;

typedef struct cfm_constant cfm_constant;
typedef struct cfm_real cfm_real;
typedef struct cfm_quotients cfm_quotients;
typedef struct cfm_convergents cfm_convergents;
typedef struct cfm_table cfm_table;
typedef struct cfm_probe cfm_probe;
typedef struct cfm_report cfm_report;
typedef struct cfm_bench cfm_bench;

CFM_API const char* cfm_version(void);
CFM_API const char* cfm_status_string(cfm_status status);
/* Message for the most recent failure on this thread, "" if none. */
CFM_API const char* cfm_last_error(void);

/* digits as given, guard 10, max_digits 1000000. */
CFM_API cfm_budget cfm_budget_default(uint32_t digits);

/* Releases the heap strings returned through `char**` out-parameters. */
CFM_API void cfm_string_free(char* s);

/* ---- constants -------------------------------------------------------- */

/* pi, pi2, pi3, pi^t/s, sqrt:d, surd:a,b,d,c, lit:<decimal>, golden */
CFM_API cfm_status cfm_constant_parse(const char* text, cfm_constant** out);
CFM_API cfm_status cfm_constant_pi_power(int64_t t, int64_t s, cfm_constant** out);
CFM_API cfm_status cfm_constant_surd(int64_t a, int64_t b, int64_t d, int64_t c, cfm_constant** out);
CFM_API cfm_status cfm_constant_literal(const char* decimal, cfm_constant** out);
CFM_API const char* cfm_constant_name(const cfm_constant* c);
CFM_API int cfm_constant_is_rational(const cfm_constant* c);
CFM_API void cfm_constant_free(cfm_constant* c);

/* ---- certified reals -------------------------------------------------- */

CFM_API cfm_status cfm_constant_eval(const cfm_constant* c, cfm_budget budget, cfm_real** out);
CFM_API cfm_status cfm_real_sin(const cfm_real* x, cfm_budget budget, cfm_real** out);
/* Endpoints as exact rationals "num/den" (or "num"). */
CFM_API const char* cfm_real_lo(const cfm_real* x);
CFM_API const char* cfm_real_hi(const cfm_real* x);
/* Midpoint, scientific notation, `significant` digits (1..1000).
 * The string stays valid until the next call on this handle. */
CFM_API const char* cfm_real_midpoint(cfm_real* x, int significant);
/* 1 when hi - lo <= 10^(-digits). */
CFM_API int cfm_real_width_within(const cfm_real* x, int64_t digits);
CFM_API void cfm_real_free(cfm_real* x);

/* ---- continued fractions ---------------------------------------------- */

CFM_API cfm_status cfm_expand(const cfm_constant* c, size_t want_terms, cfm_budget budget,
                              cfm_quotients** out);
CFM_API cfm_status cfm_certify(const cfm_constant* c, size_t want_terms, cfm_budget budget,
                               size_t* certified_count);
/* Exact periodic expansion of a surd; preperiod/period may be NULL. */
CFM_API cfm_status cfm_surd_expand(const cfm_constant* c, size_t want_terms, cfm_quotients** out,
                                   size_t* preperiod, size_t* period);
/* Exact quotient list: terms[0] any integer, terms[i >= 1] >= 1. */
CFM_API cfm_status cfm_quotients_from_int64(const int64_t* terms, size_t count, cfm_quotients** out);
CFM_API size_t cfm_quotients_count(const cfm_quotients* q);
CFM_API const char* cfm_quotients_term(const cfm_quotients* q, size_t index);
CFM_API int cfm_quotients_terminated(const cfm_quotients* q);
CFM_API void cfm_quotients_free(cfm_quotients* q);

/* ---- convergents ------------------------------------------------------ */

/* Convergents with internal index 0..upto. */
CFM_API cfm_status cfm_convergents_compute(const cfm_quotients* q, size_t upto, cfm_engine engine,
                                           cfm_convergents** out);
/* Single convergent at internal index n by the product-tree engine. */
CFM_API cfm_status cfm_convergent_fast(const cfm_quotients* q, size_t n, cfm_convergents** out);
CFM_API size_t cfm_convergents_count(const cfm_convergents* c);
/* Internal (0-based) index of entry i, and p, q as decimal strings. */
CFM_API cfm_status cfm_convergents_get(const cfm_convergents* c, size_t i, size_t* n, const char** p,
                                       const char** q);
/* 1 iff p_n q_(n-1) - p_(n-1) q_n = (-1)^(n-1) for every consecutive pair. */
CFM_API int cfm_convergents_check_determinant(const cfm_convergents* c);
CFM_API void cfm_convergents_free(cfm_convergents* c);

/* a_0 + sum_{k<n} (-1)^k / (q_k q_{k+1}) as numerator and denominator. */
CFM_API cfm_status cfm_telescoping_sum(const cfm_quotients* q, size_t n, char** numerator,
                                       char** denominator);
/* [[1,1],[1,0]]^n as four strings m00, m01, m10, m11. */
CFM_API cfm_status cfm_fib_power(uint64_t n, char* entries[4]);

/* ---- measure table ---------------------------------------------------- */

/* mu_n = -log|alpha - p_n/q_n| / log q_n is a finite-n statistic. Values
 * near 2 are what convergents of almost every real give; a table of them is
 * not a bound on the irrationality measure of the constant. */

typedef struct cfm_measure_row {
  size_t n;             /* 1-based display index */
  const char* p;
  const char* q;
  const char* mu;       /* NULL when q == 1 */
  const char* lagrange; /* q^(mu-2), 6 decimals */
} cfm_measure_row;

CFM_API cfm_status cfm_measure_table(const cfm_constant* c, size_t rows, cfm_budget budget,
                                     cfm_table** out);
CFM_API size_t cfm_table_rows(const cfm_table* t);
CFM_API cfm_status cfm_table_row(const cfm_table* t, size_t i, cfm_measure_row* out);
CFM_API void cfm_table_free(cfm_table* t);

/* mu_n for one convergent p/q of the constant, 6 decimals; *mu is set to
 * NULL when q == 1. Free the result with cfm_string_free. */
CFM_API cfm_status cfm_mu_n(const cfm_constant* c, const char* p, const char* q, cfm_budget budget,
                            char** mu);
/* Unrounded enclosure [lo, hi] of mu_n as exact rationals "num/den", with
 * the constant evaluated to budget.digits. Free both with cfm_string_free. */
CFM_API cfm_status cfm_mu_enclosure(const cfm_constant* c, const char* p, const char* q, cfm_budget budget,
                                    char** lo, char** hi);
/* q^(mu - 2) to 6 decimals for a 6-decimal mu. */
CFM_API cfm_status cfm_lagrange(const char* q, const char* mu, char** out);

/* ---- sine probes ------------------------------------------------------ */

typedef struct cfm_probe_row {
  size_t n;
  const char* p;
  const char* q;
  /* Midpoints of the enclosures, scientific notation. */
  const char* epsilon;
  const char* sin_direct; /* NULL unless the constant is pi^2 */
  const char* sin_reduced;
  const char* sin_unscaled;
  /* log10 of the widest of the sine enclosures, rounded up. */
  int64_t sin_width_exponent;
  /* 1 when |sin(pi^3 q)| and |sin(pi eps)| enclosures intersect, -1 if not checked. */
  int sines_intersect;
  int bounds_checked;
  int upper_ok;
  int lower_ok;
  int envelope_ok;
  const char* mu; /* NULL when q == 1 */
} cfm_probe_row;

CFM_API cfm_status cfm_probe_table(const cfm_constant* c, size_t rows, cfm_budget budget,
                                   cfm_probe** out);
CFM_API size_t cfm_probe_rows(const cfm_probe* p);
CFM_API cfm_status cfm_probe_row_get(const cfm_probe* p, size_t i, cfm_probe_row* out);
/* Exact |midpoint(sin_direct) - midpoint(sin_reduced)| < 10^(-digits); 0 if not applicable. */
CFM_API int cfm_probe_sines_agree(const cfm_probe* p, size_t i, int64_t digits);
CFM_API void cfm_probe_free(cfm_probe* p);

/* ---- verification ----------------------------------------------------- */

CFM_API cfm_status cfm_verify(const cfm_constant* c, size_t terms, cfm_budget budget, cfm_report** out);
CFM_API size_t cfm_report_checks(const cfm_report* r);
CFM_API cfm_status cfm_report_check(const cfm_report* r, size_t i, const char** name, int* passed,
                                    const char** detail);
CFM_API size_t cfm_report_notes(const cfm_report* r);
CFM_API const char* cfm_report_note(const cfm_report* r, size_t i);
CFM_API int cfm_report_all_passed(const cfm_report* r);
CFM_API void cfm_report_free(cfm_report* r);

/* ---- benchmark -------------------------------------------------------- */

typedef struct cfm_bench_run {
  size_t terms;
  cfm_engine engine;
  double wall_ms;
  uint64_t multiplications;
  uint64_t work_bits; /* sum of operand bit lengths over all multiplications */
} cfm_bench_run;

/* source: "random" (seeded) or a surd constant such as golden or sqrt:2. */
CFM_API cfm_status cfm_bench_run_all(const char* source, uint64_t seed, size_t max_terms,
                                     cfm_bench** out);
CFM_API const char* cfm_bench_source(const cfm_bench* b);
CFM_API size_t cfm_bench_sizes(const cfm_bench* b);
/* engine_index 0..2 = iter, matrix, fast */
CFM_API cfm_status cfm_bench_get(const cfm_bench* b, size_t size_index, size_t engine_index,
                                 cfm_bench_run* out);
CFM_API cfm_status cfm_bench_size_info(const cfm_bench* b, size_t size_index, size_t* terms,
                                       size_t* p_bits, size_t* q_bits, int* engines_agree);
CFM_API void cfm_bench_free(cfm_bench* b);

#ifdef __cplusplus
}
#endif

#endif /* CFM_CFM_H_ */
