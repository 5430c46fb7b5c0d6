#pragma once

#include "sipdec/decomposition.hpp"
#include "sipdec/heuristics.hpp"
#include "sipdec/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace sipdec {

enum class Model {
    cpfc,   // forward checking, maxcstr
    cpac,   // arc-consistent morphism constraints, maxcstr
    dec,    // FC + minsize up to the cap, then AC + maxcstr with decomposition
    dec_h1, // as dec, first phase restricted to the cycle heuristic's set
    dec_h2, // as dec, first phase restricted to the partition nodecut
};

enum class SearchMode {
    first,
    count_all,
    enumerate_all,
};

// When the hybrid models leave the forward-checking phase.
enum class SwitchRule {
    // After the body set is assigned or the cap is reached, whichever comes
    // first; but if the body set is every variable and larger than the cap,
    // never switch, so the run is plain FC with minsize.
    body_or_cap_except_full_cover,
    // After the body set is assigned or the cap is reached, always.
    body_or_cap,
};

enum class SolveStatus {
    solved,
    timeout,
};

struct ModelConfig {
    Model model = Model::cpfc;
    double switch_fraction = 0.30; // in (0, 1]
    SwitchRule switch_rule = SwitchRule::body_or_cap_except_full_cover;
    SearchMode search_mode = SearchMode::count_all;
    double time_limit_s = 0.0; // <= 0: none
    std::optional<std::uint64_t> node_limit;
    std::uint64_t rng_seed = 0;

    // Run the AC fixpoint after every assignment; otherwise AC runs only at
    // the root / phase switch and assignments propagate by FC.
    bool ac_after_every_assignment = true;
    bool degree_prefilter = false;
    // Replaces maxcstr in cpfc / cpac.
    std::optional<SelectionPolicy> selection_override;

    // Skip decomposition checks entirely (hybrid phases are kept).
    bool disable_decomposition = false;
    // Re-solve every decomposed subtree without decomposition and compare
    // counts. count_all mode only.
    bool verify_splits = false;
    bool record_trace = false;
};

struct TraceStep {
    std::uint32_t depth;
    NodeId variable;
    NodeId value;
    friend bool operator==(const TraceStep &, const TraceStep &) = default;
};

struct SolveResult {
    SolveStatus status = SolveStatus::solved;
    BigCount solution_count = 0; // lower bound when status is timeout
    double elapsed_s = 0.0;
    std::uint64_t search_nodes = 0;
    std::uint64_t decomposition_events = 0;
    bool used_decomposition = false;
    double heuristic_fraction = 0.0;
    int phase_switch_depth = -1; // -1: never switched

    std::uint64_t decomposition_checks = 0;
    double decomposition_check_s = 0.0;

    std::uint64_t verified_splits = 0;
    std::uint64_t split_mismatches = 0;

    std::vector<Solution> solutions; // enumerate_all, or the witness in first mode
    std::vector<TraceStep> trace;
};

class SearchInterrupted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view model_name(Model model);
// Accepts cpfc, cpac, dec, dec-h1 / dec_h1, dec-h2 / dec_h2.
std::optional<Model> parse_model(std::string_view name);

SolveResult solve(const SipInstance & instance, const ModelConfig & config);

// Counts the extensions of `state` that assign exactly the unassigned members
// of `vars`, searching as the config's model does after its phase switch.
// `state` must be propagated and is left unchanged. Throws
// SearchInterrupted on a time or node limit.
BigCount count_solutions_subtree(const SipInstance & instance, SearchState & state, std::span<const NodeId> vars,
    const ModelConfig & config);

} // namespace sipdec
