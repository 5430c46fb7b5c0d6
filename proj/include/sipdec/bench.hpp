#pragma once

#include "sipdec/generators.hpp"
#include "sipdec/search.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sipdec {

// One instance class of a benchmark manifest.
//
// Manifest syntax: `key = value` lines, `#` comments, and `[class LABEL]`
// section headers. Keys set before the first section are defaults for every
// class. Keys: generator (random|mesh), n, eta, side, dims, rho, alpha,
// mode (embedded|independent), instances, seed, models (comma list),
// time_limit, search_mode (first|count|enum), switch_fraction, node_limit.
struct ClassSpec {
    enum class Generator { random, mesh };

    std::string label;
    Generator generator = Generator::random;
    RandomParams random;
    MeshParams mesh;
    std::size_t instances = 10;
    std::vector<Model> models{Model::cpfc, Model::cpac, Model::dec, Model::dec_h1, Model::dec_h2};
    double time_limit_s = 60.0;
    std::uint64_t node_limit = 0; // 0: none
    SearchMode search_mode = SearchMode::count_all;
    double switch_fraction = 0.30;
    std::uint64_t seed = 1;
};

struct Manifest {
    std::vector<ClassSpec> classes;
};

class ManifestError : public std::runtime_error {
public:
    ManifestError(std::size_t line, const std::string & what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

Manifest parse_manifest(std::istream & in);
Manifest read_manifest(const std::filesystem::path & path);

// Instance i of a class uses derive_seed(class seed, i) for generation and
// as the solver's rng seed.
GeneratedInstance generate_instance(const ClassSpec & spec, std::size_t index);

struct InstanceRecord {
    std::string class_label;
    std::string model;
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    bool solved = false;
    BigCount solutions = 0;
    double elapsed_s = 0.0;
    std::uint64_t search_nodes = 0;
    std::uint64_t decomposition_events = 0;
    bool used_decomposition = false;
    double heuristic_fraction = 0.0;
};

std::string to_json_line(const InstanceRecord & record);
InstanceRecord parse_json_line(std::string_view line);
std::vector<InstanceRecord> read_log(const std::filesystem::path & path);

// Per (class, model), in order of first appearance. Time, solution and
// decomposition statistics are over solved instances only; S is over all.
struct BenchRecord {
    std::string class_label;
    std::string model;
    std::size_t instances_run = 0;
    double solved_percent = 0.0;
    double mean_time_s = 0.0;   // NaN when nothing solved
    double stddev_time_s = 0.0; // population; NaN when nothing solved
    double mean_solutions = 0.0; // NaN when nothing solved
    std::size_t instances_using_decomposition = 0;
    double mean_decomposition_events = 0.0; // NaN when nothing solved
    double mean_heuristic_fraction = 0.0;
};

std::vector<BenchRecord> aggregate(std::span<const InstanceRecord> records);

inline constexpr std::string_view csv_header = "class,model,instances,solved_pct,mu_s,sigma_s,mean_solutions,D,mean_Dcount,S";
// Undefined statistics are written as empty fields.
void write_csv(std::span<const BenchRecord> rows, std::ostream & out);

using ProgressCallback = std::function<void(const InstanceRecord &)>;

// Runs every (instance, model) pair, appending one JSON line per run to
// `log_path` (truncated first), then aggregates the log.
std::vector<BenchRecord> run_bench(const Manifest & manifest, const std::filesystem::path & log_path,
    const ProgressCallback & progress = {});

} // namespace sipdec
