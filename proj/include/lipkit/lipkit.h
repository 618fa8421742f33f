/* C interface to lipkit. All functions return an lk_status; on failure the
 * message and any witness points are available from lk_last_error() and
 * lk_last_error_witness() on the calling thread. */
#ifndef LIPKIT_LIPKIT_H
#define LIPKIT_LIPKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LK_API __declspec(dllexport)
#else
#define LK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lk_space lk_space;
typedef struct lk_result lk_result;

typedef enum lk_status {
  LK_OK = 0,
  LK_ERR_INVALID_ARGUMENT = 1,
  LK_ERR_OUT_OF_RANGE = 2,
  LK_ERR_DOMAIN = 3,
  LK_ERR_PRECONDITION = 4,
  LK_ERR_IO = 5,
  LK_ERR_INTERNAL = 6
} lk_status;

LK_API const char* lk_version(void);
LK_API const char* lk_last_error(void);
/* Copies up to `cap` witness ids into `out`; returns the total count. */
LK_API size_t lk_last_error_witness(size_t* out, size_t cap);

/* Spaces */
LK_API lk_status lk_space_load(const char* path, lk_space** out);
LK_API lk_status lk_space_from_matrix(size_t n, const double* distances, lk_space** out);
LK_API lk_status lk_space_from_points(size_t n, size_t dim, const double* coords, lk_space** out);
LK_API lk_status lk_space_from_grid(double lo, double hi, double step, lk_space** out);
LK_API void lk_space_free(lk_space* space);
LK_API size_t lk_space_size(const lk_space* space);
LK_API lk_status lk_space_dist(const lk_space* space, size_t p, size_t q, double* out);

/* File inputs; unused entries may be NULL. */
typedef struct lk_inputs {
  const char* subset;  /* JSON array of ids */
  const char* values;  /* CSV id,value or JSON expression */
  const char* witness; /* JSON [{p,delta,K}]; CSV id,L for pointwise constants */
  const char* cover;   /* JSON list of sets */
  const char* lower;   /* envelope g: CSV or JSON expression */
  const char* upper;   /* envelope h */
} lk_inputs;

typedef struct lk_params {
  double k;             /* Lipschitz constant; NaN when unset */
  const char* interval; /* "lo,hi[,open|closed,open|closed]"; NULL is the real line */
  int grid_depth;       /* starting dyadic depth */
  int n_max;            /* approximation steps */
  uint64_t seed;
  double tol;           /* certificate tolerance, within [1e-12, 1e-3] */
  int transported;      /* modulus: 0 bounded, 1 transported */
} lk_params;

LK_API void lk_params_init(lk_params* params);

/* Pipelines. Each produces a result holding a table and a certificate. */
LK_API lk_status lk_validate_metric(const lk_space* space, const lk_params* params, lk_result** out);
LK_API lk_status lk_extend(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_extend_pointwise(const lk_space* space, const lk_inputs* in, const lk_params* params,
                                     lk_result** out);
LK_API lk_status lk_pou(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_decompose(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_modulus(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_extend_local(const lk_space* space, const lk_inputs* in, const lk_params* params,
                                 lk_result** out);
LK_API lk_status lk_select(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_insert(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
LK_API lk_status lk_approx(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out);
/* check: "lipschitz", "local-witness", "pou", "sandwich" or "random-extension". */
LK_API lk_status lk_certify(const char* check, const lk_space* space, const lk_inputs* in, const lk_params* params,
                            lk_result** out);
/* name: "sin-inv-t", "cusp-curve", "reciprocal-staircase" or "dowker-step". */
LK_API lk_status lk_demo(const char* name, lk_result** out);

/* Results */
LK_API void lk_result_free(lk_result* result);
LK_API int lk_result_passed(const lk_result* result);
LK_API size_t lk_result_rows(const lk_result* result);
LK_API size_t lk_result_columns(const lk_result* result);
LK_API const char* lk_result_column_name(const lk_result* result, size_t column);
LK_API const double* lk_result_column(const lk_result* result, size_t column);
/* Certificate as a JSON document. */
LK_API const char* lk_result_certificate(const lk_result* result);

#ifdef __cplusplus
}
#endif

#endif
