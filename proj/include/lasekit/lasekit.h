/*
 * lasekit C interface.
 *
 * Opaque handles own all results; every function returns an lk_status and
 * writes outputs through pointers. A failing call leaves a thread-local
 * message retrievable with lk_last_error(). Handles are immutable after
 * creation and may be shared across threads; each must be freed exactly once
 * with its matching *_free function.
 */
#ifndef LASEKIT_H
#define LASEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LASEKIT_BUILDING)
#    define LASEKIT_API __declspec(dllexport)
#  else
#    define LASEKIT_API __declspec(dllimport)
#  endif
#else
#  define LASEKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LASEKIT_VERSION_MAJOR 1
#define LASEKIT_VERSION_MINOR 0

typedef enum lk_status {
    LK_OK = 0,
    LK_E_NULL_ARGUMENT = 1,
    LK_E_INVALID_ARGUMENT = 2,
    LK_E_SINGULAR = 3,
    LK_E_NOT_PHYSICAL = 4,   /* operation needs a physical parameterization */
    LK_E_NO_CONVERGENCE = 5, /* settle ran out of time; outputs still filled */
    LK_E_STIFFNESS = 6,      /* integrator step size underflow */
    LK_E_STEP_LIMIT = 7,
    LK_E_OUT_OF_RANGE = 8,
    LK_E_INTERNAL = 9
} lk_status;

typedef enum lk_model_kind {
    LK_MODEL_TWO_LEVEL = 0,
    LK_MODEL_SCHEME_A = 1,
    LK_MODEL_SCHEME_B = 2
} lk_model_kind;

typedef enum lk_regime {
    LK_REGIME_BELOW_THRESHOLD = 0,
    LK_REGIME_LASING = 1,
    LK_REGIME_ABOVE_UPPER_BOUND = 2
} lk_regime;

typedef enum lk_scale { LK_SCALE_LINEAR = 0, LK_SCALE_LOG = 1 } lk_scale;

typedef struct lk_physical_two {
    double n_atoms;
    double coupling_g;
    double cavity_kappa;
    double gamma_decay;
    double pump_Gamma;
    double gamma_ph;
} lk_physical_two;

typedef struct lk_physical_three {
    double n_atoms;
    double coupling_g;
    double cavity_kappa;
    double gamma_21;
    double gamma_02;
    double gamma_10;
    double gamma_ph;
} lk_physical_three;

/* eps is ignored for the two-level model. */
typedef struct lk_dimensionless {
    double lambda;
    double s;
    double eps;
    double delta;
} lk_dimensionless;

typedef struct lk_model lk_model;
typedef struct lk_series lk_series;
typedef struct lk_trajectory lk_trajectory;

LASEKIT_API const char* lk_status_string(lk_status status);
/* Message of the last failure on the calling thread ("" if none). */
LASEKIT_API const char* lk_last_error(void);
LASEKIT_API const char* lk_model_kind_name(lk_model_kind kind);
LASEKIT_API const char* lk_regime_name(lk_regime regime);

/* --- models -------------------------------------------------------------- */

LASEKIT_API lk_status lk_model_from_physical_two(const lk_physical_two* p, lk_model** out);
/* kind must be LK_MODEL_SCHEME_A or LK_MODEL_SCHEME_B. */
LASEKIT_API lk_status lk_model_from_physical_three(const lk_physical_three* p, lk_model_kind kind,
                                                   lk_model** out);
LASEKIT_API lk_status lk_model_from_dimensionless(lk_model_kind kind, const lk_dimensionless* d,
                                                  lk_model** out);
/* Copy of a dimensionless model that is treated as physical in the canonical
 * gauge (kappa = 1, reference rate = 1). Physical models are copied as-is. */
LASEKIT_API lk_status lk_model_gauge_expand(const lk_model* model, lk_model** out);
LASEKIT_API void lk_model_free(lk_model* model);

typedef struct lk_model_info {
    lk_model_kind kind;
    int is_physical;
    int has_configured_pump;
    double configured_pump; /* relative pump of a physical config */
    lk_dimensionless reduced;
} lk_model_info;

LASEKIT_API lk_status lk_model_get_info(const lk_model* model, lk_model_info* out);
/* Number of (name, value) parameter-record entries and indexed access. The
 * name pointer stays valid for the lifetime of the model. */
LASEKIT_API size_t lk_model_parameter_count(const lk_model* model);
LASEKIT_API lk_status lk_model_parameter(const lk_model* model, size_t index, const char** name,
                                         double* value);

/* --- closed forms -------------------------------------------------------- */

typedef struct lk_steady_report {
    double photon_number;
    double raw_bracket;
    double raw_photon_number;
    lk_regime regime;
    double gamma_perp;
    double rho00;
    double rho11;
    double rho22;
    /* three-level only (NaN otherwise), from the physical realization */
    double gamma_parallel;
    double inversion;
} lk_steady_report;

LASEKIT_API lk_status lk_steady(const lk_model* model, double pump, lk_steady_report* out);
LASEKIT_API lk_status lk_raw_bracket(const lk_model* model, double pump, double* out);

typedef struct lk_window {
    int present;
    double lower;
    double upper; /* +inf when unbounded */
    int exact;
} lk_window;

typedef struct lk_region_report {
    int lasing_possible;
    int has_threshold;
    double threshold;
    lk_window window;             /* exact roots */
    lk_window window_asymptotic;  /* simplified closed form */
    double window_upper_relative_error;
    lk_window pump_restriction;   /* two-level necessary condition */
    int has_extremum;
    double p_closed_form;
    double p_exact;
    double n_at_exact;
    double n_at_closed_form;
    double extremum_discrepancy;
    int has_n_max_approx;
    double n_max_approx;
    double n_max_relative_error;
    int has_n_min;                /* scheme A, physical configs */
    double n_min;
    int has_s_bound;
    double s_bound;
    int has_saturation;
    double saturation;
    lk_window depletion_window;   /* scheme A, ratio gamma_02 / gamma_10 */
    lk_window depletion_window_asymptotic;
} lk_region_report;

/* Always LK_OK for a valid model: "no lasing" is lasing_possible == 0. */
LASEKIT_API lk_status lk_region(const lk_model* model, lk_region_report* out);

/* --- numerics ------------------------------------------------------------ */

typedef struct lk_integrator_config {
    double rel_tol;
    double abs_tol;
    double max_step;
    double t_max;        /* <= 0: automatic */
    double steady_tol;
    double output_every; /* 0: every accepted step */
    uint64_t max_steps;
} lk_integrator_config;

LASEKIT_API void lk_integrator_config_default(lk_integrator_config* out);

typedef struct lk_sweep_options {
    double pump_min;
    double pump_max;
    size_t count;
    lk_scale scale;
    unsigned threads;
    size_t oracle_every; /* 0: no ODE oracle values */
    lk_integrator_config integrator;
    double seed_field;
} lk_sweep_options;

LASEKIT_API void lk_sweep_options_default(lk_sweep_options* out);
LASEKIT_API lk_status lk_sweep(const lk_model* model, const lk_sweep_options* options,
                               lk_series** out);
LASEKIT_API size_t lk_series_size(const lk_series* series);
/* ode_photon_number receives NaN when no oracle value exists; any output
 * pointer may be NULL. */
LASEKIT_API lk_status lk_series_get(const lk_series* series, size_t index, double* pump,
                                    double* photon_number, lk_regime* regime,
                                    double* ode_photon_number);
LASEKIT_API int lk_series_has_oracle(const lk_series* series);
LASEKIT_API void lk_series_free(lk_series* series);

/* --- dynamics ------------------------------------------------------------ */

/* rho22 is ignored for the two-level model. */
typedef struct lk_state {
    double rho11;
    double rho22;
    double y;
    double x;
} lk_state;

LASEKIT_API lk_status lk_default_initial_state(const lk_model* model, double pump,
                                               double seed_field, lk_state* out);
LASEKIT_API lk_status lk_derivatives(const lk_model* model, double pump, const lk_state* state,
                                     lk_state* out);

/* Integration horizon used when lk_integrator_config.t_max <= 0. */
LASEKIT_API lk_status lk_default_t_max(const lk_model* model, double pump, double* out);

/* All dynamics entry points require a physical model (see lk_model_gauge_expand). */
LASEKIT_API lk_status lk_integrate(const lk_model* model, double pump, const lk_state* initial,
                                   const lk_integrator_config* cfg, lk_trajectory** out);

typedef struct lk_settle_result {
    int converged;
    double t_final;
    double photon_number;
    lk_state state;
} lk_settle_result;

/* Returns LK_E_NO_CONVERGENCE (with *result filled) if t_max elapses first.
 * trajectory may be NULL; otherwise it receives the recorded samples even
 * when convergence fails. */
LASEKIT_API lk_status lk_settle(const lk_model* model, double pump, const lk_state* initial,
                                const lk_integrator_config* cfg, lk_settle_result* result,
                                lk_trajectory** trajectory);

LASEKIT_API size_t lk_trajectory_size(const lk_trajectory* trajectory);
LASEKIT_API lk_status lk_trajectory_get(const lk_trajectory* trajectory, size_t index, double* t,
                                        lk_state* state);
LASEKIT_API void lk_trajectory_free(lk_trajectory* trajectory);

#ifdef __cplusplus
}
#endif

#endif
