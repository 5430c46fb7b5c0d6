// Command-line front end: generate instances, solve, run benchmarks, and
// cross-check counts with the brute-force oracle.

#include "sipdec/sipdec.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_limit = 2;

struct InstanceDeleter {
    void operator()(sipdec_instance * i) const { sipdec_instance_destroy(i); }
};
struct GraphDeleter {
    void operator()(sipdec_graph * g) const { sipdec_graph_destroy(g); }
};
struct ResultDeleter {
    void operator()(sipdec_result * r) const { sipdec_result_destroy(r); }
};
using InstancePtr = std::unique_ptr<sipdec_instance, InstanceDeleter>;
using GraphPtr = std::unique_ptr<sipdec_graph, GraphDeleter>;
using ResultPtr = std::unique_ptr<sipdec_result, ResultDeleter>;

int report(sipdec_status status)
{
    std::cerr << "sipdec: " << sipdec_status_string(status) << ": " << sipdec_last_error() << '\n';
    return status == SIPDEC_LIMIT_EXCEEDED ? exit_limit : exit_error;
}

InstancePtr load_instance(const std::string & pattern_path, const std::string & target_path, sipdec_status & status)
{
    sipdec_graph * raw = nullptr;
    if ((status = sipdec_graph_read(pattern_path.c_str(), &raw)) != SIPDEC_OK)
        return nullptr;
    GraphPtr pattern(raw);
    if ((status = sipdec_graph_read(target_path.c_str(), &raw)) != SIPDEC_OK)
        return nullptr;
    GraphPtr target(raw);
    sipdec_instance * inst = nullptr;
    status = sipdec_instance_create(pattern.get(), target.get(), &inst);
    return InstancePtr(inst);
}

struct GenOptions {
    std::string kind;
    std::size_t n = 100;
    double eta = 0.02;
    std::size_t side = 10;
    std::size_t dims = 2;
    double rho = 0.1;
    double alpha = 0.2;
    std::uint64_t seed = 1;
    std::string mode = "embedded";
    std::string out_dir;
};

int run_gen(const GenOptions & o)
{
    auto mode = o.mode == "independent" ? SIPDEC_PATTERN_INDEPENDENT : SIPDEC_PATTERN_EMBEDDED;
    sipdec_instance * raw = nullptr;
    auto status = o.kind == "random"
        ? sipdec_instance_generate_random(o.n, o.eta, o.alpha, o.seed, mode, &raw)
        : sipdec_instance_generate_mesh(o.side, o.dims, o.rho, o.alpha, o.seed, mode, &raw);
    if (status != SIPDEC_OK)
        return report(status);
    InstancePtr inst(raw);

    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec) {
        std::cerr << "sipdec: cannot create '" << o.out_dir << "': " << ec.message() << '\n';
        return exit_error;
    }
    const std::filesystem::path dir(o.out_dir);
    if ((status = sipdec_graph_write(sipdec_instance_pattern(inst.get()), (dir / "pattern.graph").c_str())) != SIPDEC_OK)
        return report(status);
    if ((status = sipdec_graph_write(sipdec_instance_target(inst.get()), (dir / "target.graph").c_str())) != SIPDEC_OK)
        return report(status);

    std::size_t k = sipdec_graph_node_count(sipdec_instance_pattern(inst.get()));
    std::vector<std::uint32_t> witness(k);
    if (sipdec_instance_witness(inst.get(), witness.data(), witness.size(), &k) == SIPDEC_OK) {
        std::ofstream out(dir / "embedding.txt");
        for (std::size_t i = 0; i < k; ++i)
            out << i << ' ' << witness[i] << '\n';
        if (!out) {
            std::cerr << "sipdec: failed writing embedding.txt\n";
            return exit_error;
        }
    }
    std::cout << "pattern=" << sipdec_graph_node_count(sipdec_instance_pattern(inst.get()))
              << " target=" << sipdec_graph_node_count(sipdec_instance_target(inst.get()))
              << " target_arcs=" << sipdec_graph_arc_count(sipdec_instance_target(inst.get())) << '\n';
    return exit_ok;
}

struct SolveOptions {
    std::string pattern, target, model = "cpfc", mode = "count";
    double time_limit = 0.0;
    std::uint64_t node_limit = 0, seed = 0;
    double switch_fraction = 0.30;
    bool verify = false, print_solutions = false;
};

int run_solve(const SolveOptions & o)
{
    sipdec_status status;
    auto inst = load_instance(o.pattern, o.target, status);
    if (status != SIPDEC_OK)
        return report(status);

    sipdec_config config;
    sipdec_config_init(&config);
    if ((status = sipdec_model_parse(o.model.c_str(), &config.model)) != SIPDEC_OK)
        return report(status);
    config.search_mode = o.mode == "first" ? SIPDEC_FIRST : o.mode == "enum" ? SIPDEC_ENUMERATE_ALL : SIPDEC_COUNT_ALL;
    config.time_limit_s = o.time_limit;
    config.node_limit = o.node_limit;
    config.rng_seed = o.seed;
    config.switch_fraction = o.switch_fraction;
    config.verify_splits = o.verify ? 1 : 0;

    sipdec_result * raw = nullptr;
    if ((status = sipdec_solve(inst.get(), &config, &raw)) != SIPDEC_OK)
        return report(status);
    ResultPtr result(raw);

    const bool solved = sipdec_result_solved(result.get()) != 0;
    std::printf("%s count=%s time=%.6f nodes=%llu D=%d #D=%llu S=%.4f\n", solved ? "solved" : "timeout",
        sipdec_result_count(result.get()), sipdec_result_elapsed(result.get()),
        static_cast<unsigned long long>(sipdec_result_nodes(result.get())),
        sipdec_result_used_decomposition(result.get()),
        static_cast<unsigned long long>(sipdec_result_decomposition_events(result.get())),
        sipdec_result_heuristic_fraction(result.get()));
    if (o.verify)
        std::printf("split_mismatches=%llu\n",
            static_cast<unsigned long long>(sipdec_result_split_mismatches(result.get())));

    if (o.print_solutions) {
        std::vector<std::uint32_t> buf(sipdec_graph_node_count(sipdec_instance_pattern(inst.get())));
        for (std::size_t s = 0; s < sipdec_result_solution_count(result.get()); ++s) {
            std::size_t len = 0;
            if ((status = sipdec_result_solution(result.get(), s, buf.data(), buf.size(), &len)) != SIPDEC_OK)
                return report(status);
            for (std::size_t i = 0; i < len; ++i)
                std::printf(i ? " %u" : "%u", buf[i]);
            std::printf("\n");
        }
    }
    return solved ? exit_ok : exit_limit;
}

int run_oracle(const std::string & pattern, const std::string & target)
{
    sipdec_status status;
    auto inst = load_instance(pattern, target, status);
    if (status != SIPDEC_OK)
        return report(status);
    std::size_t required = 0;
    status = sipdec_oracle_count(inst.get(), nullptr, 0, &required);
    if (status != SIPDEC_BUFFER_TOO_SMALL && status != SIPDEC_OK)
        return report(status);
    std::string text(required, '\0');
    if ((status = sipdec_oracle_count(inst.get(), text.data(), text.size(), &required)) != SIPDEC_OK)
        return report(status);
    std::cout << "count=" << text.c_str() << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Subgraph isomorphism counting with decomposition-aware search"};
    app.set_version_flag("--version", std::string(sipdec_version()));
    app.require_subcommand(1);

    GenOptions gen;
    auto * gen_cmd = app.add_subcommand("gen", "Generate a benchmark instance");
    gen_cmd->add_option("kind", gen.kind, "random or mesh")->required()->check(CLI::IsMember({"random", "mesh"}));
    gen_cmd->add_option("--n", gen.n, "Target nodes (random)");
    gen_cmd->add_option("--eta", gen.eta, "Arc probability (random)");
    gen_cmd->add_option("--side", gen.side, "Nodes per dimension (mesh)");
    gen_cmd->add_option("--dims", gen.dims, "Dimensions (mesh)");
    gen_cmd->add_option("--rho", gen.rho, "Extra arcs per node (mesh)");
    gen_cmd->add_option("--alpha", gen.alpha, "Pattern size fraction");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--mode", gen.mode, "embedded or independent")
        ->check(CLI::IsMember({"embedded", "independent"}));
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();

    SolveOptions sol;
    auto * solve_cmd = app.add_subcommand("solve", "Count or enumerate pattern occurrences");
    solve_cmd->add_option("pattern", sol.pattern, "Pattern graph file")->required();
    solve_cmd->add_option("target", sol.target, "Target graph file")->required();
    solve_cmd->add_option("--model", sol.model, "cpfc, cpac, dec, dec-h1 or dec-h2");
    solve_cmd->add_option("--mode", sol.mode, "first, count or enum")
        ->check(CLI::IsMember({"first", "count", "enum"}));
    solve_cmd->add_option("--time-limit", sol.time_limit, "Seconds; 0 for none");
    solve_cmd->add_option("--node-limit", sol.node_limit, "Search nodes; 0 for none");
    solve_cmd->add_option("--seed", sol.seed, "Seed for the partition heuristic");
    solve_cmd->add_option("--switch-fraction", sol.switch_fraction, "Phase switch cap as a fraction of variables")
        ->check(CLI::Range(0.0, 1.0));
    solve_cmd->add_flag("--verify-splits", sol.verify, "Re-check every decomposition by plain search");
    solve_cmd->add_flag("--print-solutions", sol.print_solutions, "Print each solution (enum or first mode)");

    std::string suite, csv_out, log_out;
    bool verbose = false;
    auto * bench_cmd = app.add_subcommand("bench", "Run a benchmark manifest");
    bench_cmd->add_option("--suite", suite, "Manifest file")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--out", csv_out, "Summary CSV")->required();
    bench_cmd->add_option("--log", log_out, "Per-run JSON lines log (default: <out>.jsonl)");
    bench_cmd->add_flag("-v,--verbose", verbose, "Print one line per run");

    std::string oracle_pattern, oracle_target;
    auto * oracle_cmd = app.add_subcommand("oracle", "Brute-force count for small instances");
    oracle_cmd->add_option("pattern", oracle_pattern, "Pattern graph file")->required();
    oracle_cmd->add_option("target", oracle_target, "Target graph file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e) == 0 ? exit_ok : exit_error;
    }

    if (*gen_cmd)
        return run_gen(gen);
    if (*solve_cmd)
        return run_solve(sol);
    if (*bench_cmd) {
        if (log_out.empty())
            log_out = csv_out + ".jsonl";
        auto status = sipdec_bench_run(suite.c_str(), csv_out.c_str(), log_out.c_str(), verbose ? 1 : 0);
        return status == SIPDEC_OK ? exit_ok : report(status);
    }
    return run_oracle(oracle_pattern, oracle_target);
}
