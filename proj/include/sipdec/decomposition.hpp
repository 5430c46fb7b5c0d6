#pragma once

#include "sipdec/graph.hpp"
#include "sipdec/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sipdec {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr NodeId no_value = ~NodeId{0};

// A full-width assignment; variables outside the solved scope hold no_value.
using Solution = std::vector<NodeId>;

// The pattern's constraint graph restricted to unassigned variables.
struct ReducedGraph {
    std::vector<NodeId> active;                     // sorted, |D| > 1
    std::vector<std::pair<NodeId, NodeId>> edges;   // undirected, first < second
};

ReducedGraph build_reduced_graph(const SipInstance & instance, const SearchState & state);
// Same, considering only the variables of `scope`.
ReducedGraph build_reduced_graph(const SipInstance & instance, const SearchState & state, std::span<const NodeId> scope);

struct DecompositionSplit {
    std::vector<std::vector<NodeId>> groups; // >= 2, disjoint, each sorted
    std::vector<NodeId> shared_assigned;     // assigned variables of the scope
};

// Components of the reduced graph are merged while their domain unions
// overlap; a split is returned iff at least two groups remain.
std::optional<DecompositionSplit> detect_decomposition(const SipInstance & instance, const SearchState & state);
std::optional<DecompositionSplit> detect_decomposition(const SipInstance & instance, const SearchState & state,
    std::span<const NodeId> scope);

struct PartialResult {
    BigCount count = 0;
    std::vector<Solution> solutions; // filled in enumerate mode only
};

using GroupSolver = std::function<PartialResult(std::span<const NodeId> group)>;

// Solves each group independently and combines them: the count is the product
// of group counts, short-circuiting at the first empty group. When enumerating,
// the solutions are the Cartesian combinations of group solutions laid over
// `base` (which carries the shared assigned values).
PartialResult solve_split(const DecompositionSplit & split, const GroupSolver & solve_group, bool enumerate,
    const Solution & base);

struct PseudoTree {
    NodeId root = 0;
    std::vector<NodeId> parent;              // no_value for the root and for nodes outside the tree
    std::vector<NodeId> order;               // DFS visit order
    std::vector<std::vector<NodeId>> children;

    bool is_chain() const;
};

// DFS spanning tree over the active nodes, neighbours visited in ascending
// order. Throws std::invalid_argument if the active subgraph is disconnected
// or root is not active.
PseudoTree build_pseudo_tree(const UndirectedView & g, NodeId root);
PseudoTree build_pseudo_tree(const UndirectedView & g, std::span<const NodeId> active, NodeId root);

// Every non-tree edge between tree nodes joins a node to one of its ancestors.
bool has_back_arc_property(const UndirectedView & g, const PseudoTree & tree);

} // namespace sipdec
