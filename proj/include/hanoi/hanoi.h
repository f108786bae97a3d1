#ifndef HANOI_HANOI_H
#define HANOI_HANOI_H

/* C interface to the HN4 quantum search simulator.
 *
 * Every call returns an hn_status; on failure hn_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the
 * caller once created. Output paths of NULL or "-" mean stdout. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define HN_API __declspec(dllexport)
#else
#  define HN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hn_status {
    HN_OK = 0,
    HN_ERR_DOMAIN = 1,
    HN_ERR_NO_FACTORIZATION = 2,
    HN_ERR_NO_PEAK = 3,
    HN_ERR_RESOURCE = 4,
    HN_ERR_PARSE = 5,
    HN_ERR_IO = 6,
    HN_ERR_INVALID_ARGUMENT = 7,
    HN_ERR_INTERNAL = 8
} hn_status;

typedef enum hn_method { HN_METHOD_ABSTRACT = 0, HN_METHOD_TULSI = 1, HN_METHOD_MODIFIED = 2 } hn_method;
typedef enum hn_edge_mode { HN_MODE_PAIRED = 0, HN_MODE_CHAIN = 1 } hn_edge_mode;
typedef enum hn_cos_delta_rule {
    HN_COS_DELTA_EXPLICIT = 0,
    HN_COS_DELTA_INV_LOG = 1,
    HN_COS_DELTA_INV_SQRT_LOG = 2
} hn_cos_delta_rule;
typedef enum hn_reflection_axis { HN_AXIS_GROVER = 0, HN_AXIS_COIN = 1 } hn_reflection_axis;
typedef enum hn_sweep_variable { HN_SWEEP_SIZE = 0, HN_SWEEP_EPSILON = 1, HN_SWEEP_DELTA = 2 } hn_sweep_variable;

typedef struct hn_search_config {
    int method;          /* hn_method */
    int n;               /* N = 2^n vertices */
    uint32_t k0;
    double epsilon;
    int cos_delta_rule;  /* hn_cos_delta_rule, tulsi only */
    double delta;        /* radians, explicit rule only */
    double c;            /* scale for the log rules */
    int reflection_axis; /* hn_reflection_axis */
    long long t_max;     /* 0: ceil(6 N^0.75) */
    int edge_mode;       /* hn_edge_mode */
    int smooth_window;   /* 0: automatic */
    double height_fraction;
    int refine_radius;   /* -1: automatic */
    uint64_t budget;     /* cap on amplitude updates */
} hn_search_config;

typedef struct hn_peak_report {
    long long t_f;
    double p_f;
    double cost_single;
    double cost_total;
    double series_max;
    long long t_global;
    long long repetitions;
} hn_peak_report;

typedef struct hn_scaling_fit {
    double prefactor;
    double exponent;
    double r_squared;
    int points_used;
} hn_scaling_fit;

typedef struct hn_topology hn_topology;
typedef struct hn_run hn_run;
typedef struct hn_sweep_spec hn_sweep_spec;
typedef struct hn_sweep_result hn_sweep_result;

HN_API const char* hn_version(void);
HN_API const char* hn_last_error(void);
HN_API const char* hn_status_name(hn_status status);

/* Vertex labels: k = 2^level (2 index + 1). */
HN_API hn_status hn_factorize(uint32_t k, int n, int* level, uint32_t* index);
HN_API hn_status hn_compose(int level, uint32_t index, int n, uint32_t* k);

HN_API hn_status hn_topology_create(int n, int edge_mode, hn_topology** out);
HN_API void hn_topology_destroy(hn_topology* topo);
HN_API hn_status hn_topology_size(const hn_topology* topo, uint32_t* size);
HN_API hn_status hn_topology_shift_target(const hn_topology* topo, int port, uint32_t k, int* port_out,
                                          uint32_t* k_out);
HN_API hn_status hn_topology_write_edges_csv(const hn_topology* topo, const char* path);

HN_API void hn_search_config_init(hn_search_config* config);
HN_API hn_status hn_search_config_validate(const hn_search_config* config);
/* Resolved horizon and cos(delta) (NaN unless tulsi) for a config. */
HN_API hn_status hn_search_config_horizon(const hn_search_config* config, long long* t_max);
HN_API hn_status hn_search_config_cos_delta(const hn_search_config* config, double* cos_delta);

/* Runs the full series; the final state is kept for hn_run_write_state_csv. */
HN_API hn_status hn_run_create(const hn_search_config* config, hn_run** out);
HN_API void hn_run_destroy(hn_run* run);
HN_API hn_status hn_run_series(const hn_run* run, const double** data, size_t* length);
HN_API hn_status hn_run_peak(const hn_run* run, hn_peak_report* report);
HN_API hn_status hn_run_final_norm(const hn_run* run, double* norm_squared);
HN_API hn_status hn_run_write_series_csv(const hn_run* run, const char* path);
HN_API hn_status hn_run_write_report_csv(const hn_run* run, const char* path);
HN_API hn_status hn_run_write_state_csv(const hn_run* run, const char* path);

HN_API hn_status hn_detect_first_peak(const double* series, size_t length, int smooth_window,
                                      double height_fraction, int refine_radius, uint32_t size,
                                      hn_peak_report* report);

HN_API hn_status hn_sweep_spec_create(const hn_search_config* base, int variable, hn_sweep_spec** out);
HN_API void hn_sweep_spec_destroy(hn_sweep_spec* spec);
HN_API hn_status hn_sweep_spec_set_sizes(hn_sweep_spec* spec, const int* n_values, size_t count);
HN_API hn_status hn_sweep_spec_set_epsilons(hn_sweep_spec* spec, const double* values, size_t count);
HN_API hn_status hn_sweep_spec_set_c_values(hn_sweep_spec* spec, const double* values, size_t count);
HN_API hn_status hn_sweep_spec_set_jobs(hn_sweep_spec* spec, unsigned jobs);

HN_API hn_status hn_sweep_run(const hn_sweep_spec* spec, hn_sweep_result** out);
HN_API void hn_sweep_result_destroy(hn_sweep_result* result);
HN_API hn_status hn_sweep_result_rows(const hn_sweep_result* result, size_t* count);
/* *ok is 0 for a NoPeak row, whose report is zeroed. */
HN_API hn_status hn_sweep_result_row(const hn_sweep_result* result, size_t index, double* value,
                                     hn_peak_report* report, int* ok);
HN_API hn_status hn_sweep_result_write_csv(const hn_sweep_result* result, const char* path);

HN_API hn_status hn_fit_powerlaw(const double* x, const double* y, size_t count, hn_scaling_fit* fit);
HN_API hn_status hn_fit_table_csv(const char* path, const char* x_column, const char* y_column, int min_n,
                                  hn_scaling_fit* fit);
HN_API hn_status hn_fit_write_csv(const hn_scaling_fit* fit, const char* path);

#ifdef __cplusplus
}
#endif

#endif
