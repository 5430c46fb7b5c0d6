#include "sipdec/sipdec.h"

#include "sipdec/bench.hpp"
#include "sipdec/generators.hpp"
#include "sipdec/graph_io.hpp"
#include "sipdec/oracle.hpp"
#include "sipdec/search.hpp"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <string>

using namespace sipdec;

struct sipdec_graph {
    std::optional<DirectedGraph> owned;
    const DirectedGraph * view = nullptr;

    const DirectedGraph & get() const { return owned ? *owned : *view; }
};

struct sipdec_instance {
    SipInstance instance;
    std::optional<std::vector<NodeId>> embedding;
    sipdec_graph pattern_view;
    sipdec_graph target_view;

    explicit sipdec_instance(GeneratedInstance generated) :
        instance(std::move(generated.instance)),
        embedding(std::move(generated.embedding))
    {
        pattern_view.view = &instance.pattern();
        target_view.view = &instance.target();
    }
};

struct sipdec_result {
    SolveResult result;
    std::string count;
};

namespace {

thread_local std::string last_error;

sipdec_status fail(sipdec_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

// Maps exceptions escaping the core onto status codes.
template <typename F>
sipdec_status guarded(F && body)
{
    try {
        last_error.clear();
        return body();
    }
    catch (const ParseError & e) {
        return fail(SIPDEC_PARSE_ERROR, e.what());
    }
    catch (const ManifestError & e) {
        return fail(SIPDEC_PARSE_ERROR, e.what());
    }
    catch (const IoError & e) {
        return fail(SIPDEC_IO_ERROR, e.what());
    }
    catch (const OracleRefused & e) {
        return fail(SIPDEC_LIMIT_EXCEEDED, e.what());
    }
    catch (const std::invalid_argument & e) {
        return fail(SIPDEC_INVALID_ARGUMENT, e.what());
    }
    catch (const std::out_of_range & e) {
        return fail(SIPDEC_INVALID_ARGUMENT, e.what());
    }
    catch (const std::bad_alloc &) {
        return fail(SIPDEC_INTERNAL_ERROR, "out of memory");
    }
    catch (const std::exception & e) {
        return fail(SIPDEC_INTERNAL_ERROR, e.what());
    }
    catch (...) {
        return fail(SIPDEC_INTERNAL_ERROR, "unknown error");
    }
}

Model to_model(sipdec_model m)
{
    switch (m) {
    case SIPDEC_MODEL_CPFC: return Model::cpfc;
    case SIPDEC_MODEL_CPAC: return Model::cpac;
    case SIPDEC_MODEL_DEC: return Model::dec;
    case SIPDEC_MODEL_DEC_H1: return Model::dec_h1;
    case SIPDEC_MODEL_DEC_H2: return Model::dec_h2;
    }
    throw std::invalid_argument("unknown model");
}

SearchMode to_search_mode(sipdec_search_mode m)
{
    switch (m) {
    case SIPDEC_FIRST: return SearchMode::first;
    case SIPDEC_COUNT_ALL: return SearchMode::count_all;
    case SIPDEC_ENUMERATE_ALL: return SearchMode::enumerate_all;
    }
    throw std::invalid_argument("unknown search mode");
}

PatternMode to_pattern_mode(sipdec_pattern_mode m)
{
    switch (m) {
    case SIPDEC_PATTERN_EMBEDDED: return PatternMode::embedded;
    case SIPDEC_PATTERN_INDEPENDENT: return PatternMode::independent;
    }
    throw std::invalid_argument("unknown pattern mode");
}

sipdec_status copy_nodes(const std::vector<NodeId> & values, uint32_t * buffer, size_t capacity, size_t * length)
{
    if (length)
        *length = values.size();
    if (capacity < values.size())
        return fail(SIPDEC_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) + " entries, "
            + std::to_string(values.size()) + " needed");
    if (!values.empty()) {
        if (!buffer)
            return fail(SIPDEC_INVALID_ARGUMENT, "null buffer");
        std::memcpy(buffer, values.data(), values.size() * sizeof(uint32_t));
    }
    return SIPDEC_OK;
}

#define SIPDEC_REQUIRE(cond, what)                                                                                     \
    do {                                                                                                               \
        if (!(cond))                                                                                                   \
            return fail(SIPDEC_INVALID_ARGUMENT, what);                                                                \
    } while (0)

} // namespace

extern "C" {

const char * sipdec_last_error(void)
{
    return last_error.c_str();
}

const char * sipdec_version(void)
{
    return "0.1.0";
}

const char * sipdec_status_string(sipdec_status status)
{
    switch (status) {
    case SIPDEC_OK: return "ok";
    case SIPDEC_INVALID_ARGUMENT: return "invalid argument";
    case SIPDEC_PARSE_ERROR: return "parse error";
    case SIPDEC_IO_ERROR: return "i/o error";
    case SIPDEC_LIMIT_EXCEEDED: return "limit exceeded";
    case SIPDEC_BUFFER_TOO_SMALL: return "buffer too small";
    case SIPDEC_INTERNAL_ERROR: return "internal error";
    }
    return "unknown status";
}

sipdec_status sipdec_graph_create(size_t nodes, sipdec_graph ** out)
{
    SIPDEC_REQUIRE(out, "null output handle");
    return guarded([&] {
        auto g = std::make_unique<sipdec_graph>();
        g->owned.emplace(nodes);
        *out = g.release();
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_graph_add_arc(sipdec_graph * graph, uint32_t from, uint32_t to)
{
    SIPDEC_REQUIRE(graph, "null graph");
    SIPDEC_REQUIRE(graph->owned, "graph is a read-only view");
    return guarded([&] {
        if (!graph->owned->add_arc(from, to))
            return fail(SIPDEC_INVALID_ARGUMENT, "duplicate arc " + std::to_string(from) + " -> " + std::to_string(to));
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_graph_read(const char * path, sipdec_graph ** out)
{
    SIPDEC_REQUIRE(path && out, "null argument");
    return guarded([&] {
        auto g = std::make_unique<sipdec_graph>();
        g->owned.emplace(read_graph(path));
        *out = g.release();
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_graph_write(const sipdec_graph * graph, const char * path)
{
    SIPDEC_REQUIRE(graph && path, "null argument");
    return guarded([&] {
        write_graph(graph->get(), path);
        return SIPDEC_OK;
    });
}

void sipdec_graph_destroy(sipdec_graph * graph)
{
    if (graph && graph->owned)
        delete graph;
}

size_t sipdec_graph_node_count(const sipdec_graph * graph)
{
    return graph ? graph->get().node_count() : 0;
}

size_t sipdec_graph_arc_count(const sipdec_graph * graph)
{
    return graph ? graph->get().arc_count() : 0;
}

sipdec_status sipdec_graph_degree_stats(const sipdec_graph * graph, double * mean, double * stddev)
{
    SIPDEC_REQUIRE(graph && mean && stddev, "null argument");
    return guarded([&] {
        auto stats = degree_stats(graph->get());
        *mean = stats.mean;
        *stddev = stats.stddev;
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_instance_create(const sipdec_graph * pattern, const sipdec_graph * target, sipdec_instance ** out)
{
    SIPDEC_REQUIRE(pattern && target && out, "null argument");
    return guarded([&] {
        *out = new sipdec_instance(GeneratedInstance{SipInstance(pattern->get(), target->get()), std::nullopt});
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_instance_generate_random(size_t n, double eta, double alpha, uint64_t seed,
    sipdec_pattern_mode mode, sipdec_instance ** out)
{
    SIPDEC_REQUIRE(out, "null output handle");
    return guarded([&] {
        RandomParams params;
        params.n = n;
        params.eta = eta;
        params.alpha = alpha;
        params.seed = seed;
        params.mode = to_pattern_mode(mode);
        *out = new sipdec_instance(gen_random(params));
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_instance_generate_mesh(size_t side, size_t dims, double rho, double alpha, uint64_t seed,
    sipdec_pattern_mode mode, sipdec_instance ** out)
{
    SIPDEC_REQUIRE(out, "null output handle");
    return guarded([&] {
        MeshParams params;
        params.side = side;
        params.dims = dims;
        params.rho = rho;
        params.alpha = alpha;
        params.seed = seed;
        params.mode = to_pattern_mode(mode);
        *out = new sipdec_instance(gen_mesh(params));
        return SIPDEC_OK;
    });
}

void sipdec_instance_destroy(sipdec_instance * instance)
{
    delete instance;
}

const sipdec_graph * sipdec_instance_pattern(const sipdec_instance * instance)
{
    return instance ? &instance->pattern_view : nullptr;
}

const sipdec_graph * sipdec_instance_target(const sipdec_instance * instance)
{
    return instance ? &instance->target_view : nullptr;
}

sipdec_status sipdec_instance_witness(const sipdec_instance * instance, uint32_t * buffer, size_t capacity,
    size_t * length)
{
    SIPDEC_REQUIRE(instance, "null instance");
    SIPDEC_REQUIRE(instance->embedding, "instance has no known embedding");
    return copy_nodes(*instance->embedding, buffer, capacity, length);
}

void sipdec_config_init(sipdec_config * config)
{
    if (!config)
        return;
    config->model = SIPDEC_MODEL_CPFC;
    config->search_mode = SIPDEC_COUNT_ALL;
    config->switch_fraction = 0.30;
    config->time_limit_s = 0.0;
    config->node_limit = 0;
    config->rng_seed = 0;
    config->verify_splits = 0;
}

sipdec_status sipdec_model_parse(const char * name, sipdec_model * out)
{
    SIPDEC_REQUIRE(name && out, "null argument");
    auto model = parse_model(name);
    if (!model)
        return fail(SIPDEC_INVALID_ARGUMENT, std::string("unknown model '") + name + "'");
    *out = static_cast<sipdec_model>(*model);
    return SIPDEC_OK;
}

const char * sipdec_model_name(sipdec_model model)
{
    switch (model) {
    case SIPDEC_MODEL_CPFC: return "cpfc";
    case SIPDEC_MODEL_CPAC: return "cpac";
    case SIPDEC_MODEL_DEC: return "dec";
    case SIPDEC_MODEL_DEC_H1: return "dec-h1";
    case SIPDEC_MODEL_DEC_H2: return "dec-h2";
    }
    return "unknown";
}

sipdec_status sipdec_solve(const sipdec_instance * instance, const sipdec_config * config, sipdec_result ** out)
{
    SIPDEC_REQUIRE(instance && config && out, "null argument");
    SIPDEC_REQUIRE(config->switch_fraction > 0.0 && config->switch_fraction <= 1.0, "switch_fraction must lie in (0, 1]");
    return guarded([&] {
        ModelConfig mc;
        mc.model = to_model(config->model);
        mc.search_mode = to_search_mode(config->search_mode);
        mc.switch_fraction = config->switch_fraction;
        mc.time_limit_s = config->time_limit_s;
        if (config->node_limit > 0)
            mc.node_limit = config->node_limit;
        mc.rng_seed = config->rng_seed;
        mc.verify_splits = config->verify_splits != 0;
        auto r = std::make_unique<sipdec_result>();
        r->result = solve(instance->instance, mc);
        r->count = r->result.solution_count.str();
        *out = r.release();
        return SIPDEC_OK;
    });
}

void sipdec_result_destroy(sipdec_result * result)
{
    delete result;
}

int sipdec_result_solved(const sipdec_result * result)
{
    return result && result->result.status == SolveStatus::solved ? 1 : 0;
}

const char * sipdec_result_count(const sipdec_result * result)
{
    return result ? result->count.c_str() : "";
}

double sipdec_result_elapsed(const sipdec_result * result)
{
    return result ? result->result.elapsed_s : 0.0;
}

uint64_t sipdec_result_nodes(const sipdec_result * result)
{
    return result ? result->result.search_nodes : 0;
}

uint64_t sipdec_result_decomposition_events(const sipdec_result * result)
{
    return result ? result->result.decomposition_events : 0;
}

int sipdec_result_used_decomposition(const sipdec_result * result)
{
    return result && result->result.used_decomposition ? 1 : 0;
}

double sipdec_result_heuristic_fraction(const sipdec_result * result)
{
    return result ? result->result.heuristic_fraction : 0.0;
}

uint64_t sipdec_result_split_mismatches(const sipdec_result * result)
{
    return result ? result->result.split_mismatches : 0;
}

size_t sipdec_result_solution_count(const sipdec_result * result)
{
    return result ? result->result.solutions.size() : 0;
}

sipdec_status sipdec_result_solution(const sipdec_result * result, size_t index, uint32_t * buffer, size_t capacity,
    size_t * length)
{
    SIPDEC_REQUIRE(result, "null result");
    SIPDEC_REQUIRE(index < result->result.solutions.size(), "solution index out of range");
    return copy_nodes(result->result.solutions[index], buffer, capacity, length);
}

sipdec_status sipdec_oracle_count(const sipdec_instance * instance, char * buffer, size_t capacity, size_t * required)
{
    SIPDEC_REQUIRE(instance, "null instance");
    return guarded([&] {
        auto text = brute_force_count(instance->instance).str();
        if (required)
            *required = text.size() + 1;
        if (capacity < text.size() + 1 || !buffer)
            return fail(SIPDEC_BUFFER_TOO_SMALL, "count needs " + std::to_string(text.size() + 1) + " bytes");
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        return SIPDEC_OK;
    });
}

sipdec_status sipdec_bench_run(const char * manifest_path, const char * csv_path, const char * log_path, int verbose)
{
    SIPDEC_REQUIRE(manifest_path && csv_path && log_path, "null argument");
    return guarded([&] {
        auto manifest = read_manifest(manifest_path);
        ProgressCallback progress;
        if (verbose)
            progress = [](const InstanceRecord & r) {
                std::cerr << r.class_label << ' ' << r.model << " #" << r.instance << ' '
                          << (r.solved ? "solved" : "timeout") << " count=" << r.solutions << " time=" << r.elapsed_s
                          << '\n';
            };
        auto rows = run_bench(manifest, log_path, progress);
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv)
            return fail(SIPDEC_IO_ERROR, std::string("cannot open '") + csv_path + "' for writing");
        write_csv(rows, csv);
        if (!csv)
            return fail(SIPDEC_IO_ERROR, std::string("failed writing '") + csv_path + "'");
        return SIPDEC_OK;
    });
}

} // extern "C"
