/* C interface to the sipdec solver. All handles are opaque; every call that
 * can fail returns a sipdec_status and leaves a message for sipdec_last_error.
 */
#ifndef SIPDEC_H
#define SIPDEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(SIPDEC_BUILDING_LIBRARY)
#define SIPDEC_API __attribute__((visibility("default")))
#else
#define SIPDEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sipdec_status {
    SIPDEC_OK = 0,
    SIPDEC_INVALID_ARGUMENT = 1,
    SIPDEC_PARSE_ERROR = 2,
    SIPDEC_IO_ERROR = 3,
    SIPDEC_LIMIT_EXCEEDED = 4,
    SIPDEC_BUFFER_TOO_SMALL = 5,
    SIPDEC_INTERNAL_ERROR = 6
} sipdec_status;

typedef enum sipdec_model {
    SIPDEC_MODEL_CPFC = 0,
    SIPDEC_MODEL_CPAC = 1,
    SIPDEC_MODEL_DEC = 2,
    SIPDEC_MODEL_DEC_H1 = 3,
    SIPDEC_MODEL_DEC_H2 = 4
} sipdec_model;

typedef enum sipdec_search_mode {
    SIPDEC_FIRST = 0,
    SIPDEC_COUNT_ALL = 1,
    SIPDEC_ENUMERATE_ALL = 2
} sipdec_search_mode;

typedef enum sipdec_pattern_mode {
    SIPDEC_PATTERN_EMBEDDED = 0,
    SIPDEC_PATTERN_INDEPENDENT = 1
} sipdec_pattern_mode;

typedef struct sipdec_graph sipdec_graph;
typedef struct sipdec_instance sipdec_instance;
typedef struct sipdec_result sipdec_result;

/* Message of the last failed call on this thread; never NULL. */
SIPDEC_API const char * sipdec_last_error(void);
SIPDEC_API const char * sipdec_version(void);
SIPDEC_API const char * sipdec_status_string(sipdec_status status);

/* Graphs */
SIPDEC_API sipdec_status sipdec_graph_create(size_t nodes, sipdec_graph ** out);
SIPDEC_API sipdec_status sipdec_graph_add_arc(sipdec_graph * graph, uint32_t from, uint32_t to);
SIPDEC_API sipdec_status sipdec_graph_read(const char * path, sipdec_graph ** out);
SIPDEC_API sipdec_status sipdec_graph_write(const sipdec_graph * graph, const char * path);
SIPDEC_API void sipdec_graph_destroy(sipdec_graph * graph);
SIPDEC_API size_t sipdec_graph_node_count(const sipdec_graph * graph);
SIPDEC_API size_t sipdec_graph_arc_count(const sipdec_graph * graph);
/* Degree = number of distinct neighbours in the undirected view. */
SIPDEC_API sipdec_status sipdec_graph_degree_stats(const sipdec_graph * graph, double * mean, double * stddev);

/* Instances. The graphs passed to sipdec_instance_create are copied. */
SIPDEC_API sipdec_status sipdec_instance_create(const sipdec_graph * pattern, const sipdec_graph * target,
    sipdec_instance ** out);
SIPDEC_API sipdec_status sipdec_instance_generate_random(size_t n, double eta, double alpha, uint64_t seed,
    sipdec_pattern_mode mode, sipdec_instance ** out);
SIPDEC_API sipdec_status sipdec_instance_generate_mesh(size_t side, size_t dims, double rho, double alpha,
    uint64_t seed, sipdec_pattern_mode mode, sipdec_instance ** out);
SIPDEC_API void sipdec_instance_destroy(sipdec_instance * instance);
/* Borrowed views; valid while the instance lives. */
SIPDEC_API const sipdec_graph * sipdec_instance_pattern(const sipdec_instance * instance);
SIPDEC_API const sipdec_graph * sipdec_instance_target(const sipdec_instance * instance);
/* Embedding of a generated embedded instance. *length receives the pattern
 * size; returns SIPDEC_INVALID_ARGUMENT when the instance has none. */
SIPDEC_API sipdec_status sipdec_instance_witness(const sipdec_instance * instance, uint32_t * buffer,
    size_t capacity, size_t * length);

/* Solving */
typedef struct sipdec_config {
    sipdec_model model;
    sipdec_search_mode search_mode;
    double switch_fraction;
    double time_limit_s;  /* <= 0: none */
    uint64_t node_limit;  /* 0: none */
    uint64_t rng_seed;
    int verify_splits;    /* count_all only */
} sipdec_config;

SIPDEC_API void sipdec_config_init(sipdec_config * config);
SIPDEC_API sipdec_status sipdec_model_parse(const char * name, sipdec_model * out);
SIPDEC_API const char * sipdec_model_name(sipdec_model model);

SIPDEC_API sipdec_status sipdec_solve(const sipdec_instance * instance, const sipdec_config * config,
    sipdec_result ** out);
SIPDEC_API void sipdec_result_destroy(sipdec_result * result);
/* 1 when solved, 0 on timeout or node limit. */
SIPDEC_API int sipdec_result_solved(const sipdec_result * result);
/* Decimal solution count; a lower bound when not solved. Valid while the result lives. */
SIPDEC_API const char * sipdec_result_count(const sipdec_result * result);
SIPDEC_API double sipdec_result_elapsed(const sipdec_result * result);
SIPDEC_API uint64_t sipdec_result_nodes(const sipdec_result * result);
SIPDEC_API uint64_t sipdec_result_decomposition_events(const sipdec_result * result);
SIPDEC_API int sipdec_result_used_decomposition(const sipdec_result * result);
SIPDEC_API double sipdec_result_heuristic_fraction(const sipdec_result * result);
SIPDEC_API uint64_t sipdec_result_split_mismatches(const sipdec_result * result);
SIPDEC_API size_t sipdec_result_solution_count(const sipdec_result * result);
/* Copies solution `index` (pattern node -> target node) into buffer. */
SIPDEC_API sipdec_status sipdec_result_solution(const sipdec_result * result, size_t index, uint32_t * buffer,
    size_t capacity, size_t * length);

/* Brute-force count for small instances, written as a decimal string.
 * *required receives the needed size including the terminator.
 * Returns SIPDEC_LIMIT_EXCEEDED if the instance is too large. */
SIPDEC_API sipdec_status sipdec_oracle_count(const sipdec_instance * instance, char * buffer, size_t capacity,
    size_t * required);

/* Runs a benchmark manifest, writing the per-run log and the summary CSV.
 * Progress lines go to stderr when `verbose` is non-zero. */
SIPDEC_API sipdec_status sipdec_bench_run(const char * manifest_path, const char * csv_path, const char * log_path,
    int verbose);

#ifdef __cplusplus
}
#endif

#endif
