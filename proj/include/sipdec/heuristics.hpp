#pragma once

#include "sipdec/graph.hpp"
#include "sipdec/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sipdec {

// The variable set a hybrid search instantiates before it starts checking
// for decompositions.
struct HeuristicResult {
    std::vector<NodeId> body_vars; // no duplicates; highest constraint degree first
    double fraction = 0.0;         // |body_vars| / |V_p|
};

// Nodes that survive repeated removal of nodes of degree at most one, i.e.
// the 2-core. Removing them leaves a forest. Linear time.
HeuristicResult cycle_heuristic(const UndirectedView & pattern);

struct PartitionOptions {
    std::size_t restarts = 8;
    double balance = 0.1; // side sizes within ceil(balance * n) of n / 2
};

struct Bipartition {
    std::vector<std::uint8_t> side;                 // 0 or 1 per node
    std::vector<std::pair<NodeId, NodeId>> cut_edges;
    std::size_t edgecut() const { return cut_edges.size(); }
};

std::size_t balance_tolerance(std::size_t n, double balance = 0.1);
// Both sides non-empty and |side0 - n/2| <= tolerance.
bool is_balanced(std::size_t side0, std::size_t n, std::size_t tolerance);

// Gain-driven single-node moves with per-pass locking, rolled back to the best
// prefix of each pass, repeated until a pass stops improving; best of several
// random starts.
Bipartition bipartition(const UndirectedView & g, std::uint64_t seed, const PartitionOptions & options = {});

// Greedy cover of the cut edges: repeatedly take the node touching the most
// uncovered cut edges (lowest id on ties).
std::vector<NodeId> greedy_nodecut(const UndirectedView & g, std::span<const std::pair<NodeId, NodeId>> cut_edges);

HeuristicResult partition_heuristic(const UndirectedView & pattern, std::uint64_t seed,
    const PartitionOptions & options = {});

enum class SelectionPolicy {
    maxcstr, // most constraints to other unassigned variables, then smallest domain, then lowest id
    minsize, // smallest domain, then lowest id
};

// Picks among the unassigned members of `candidates`; nullopt iff all are assigned.
std::optional<NodeId> select_variable(const SearchState & state, SelectionPolicy policy,
    std::span<const NodeId> candidates);
std::optional<NodeId> select_variable(const SearchState & state, SelectionPolicy policy);
// First unassigned variable of `order`.
std::optional<NodeId> select_static(const SearchState & state, std::span<const NodeId> order);

} // namespace sipdec
