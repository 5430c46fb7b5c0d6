#pragma once

#include "sipdec/bitset.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sipdec {

using NodeId = std::uint32_t;
using Arc = std::pair<NodeId, NodeId>;

// Dense directed graph. Successor/predecessor lists are kept sorted, and each
// node carries an out-row and an in-row bitset for O(1) arc tests and for
// intersecting with solver domains.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t node_count, bool allow_self_loops = false);

    // Returns false (and changes nothing) when the arc already exists.
    // Throws std::out_of_range for bad ids and std::invalid_argument for a
    // forbidden self-loop.
    bool add_arc(NodeId from, NodeId to);

    std::size_t node_count() const { return out_adj_.size(); }
    std::size_t arc_count() const { return arc_count_; }
    bool allows_self_loops() const { return allow_self_loops_; }

    bool has_arc(NodeId from, NodeId to) const { return out_rows_[from].test(to); }
    std::span<const NodeId> successors(NodeId v) const { return out_adj_[v]; }
    std::span<const NodeId> predecessors(NodeId v) const { return in_adj_[v]; }
    const Bitset & out_row(NodeId v) const { return out_rows_[v]; }
    const Bitset & in_row(NodeId v) const { return in_rows_[v]; }

    // All arcs sorted by (from, to).
    std::vector<Arc> arcs() const;

    friend bool operator==(const DirectedGraph & a, const DirectedGraph & b)
    {
        return a.out_adj_ == b.out_adj_;
    }

private:
    bool allow_self_loops_ = false;
    std::size_t arc_count_ = 0;
    std::vector<std::vector<NodeId>> out_adj_;
    std::vector<std::vector<NodeId>> in_adj_;
    std::vector<Bitset> out_rows_;
    std::vector<Bitset> in_rows_;
};

// Undirected reading of a DirectedGraph: {u,v} is an edge iff (u,v) or (v,u)
// is an arc. Neighbour lists are distinct and sorted. The view keeps a pointer
// to its base graph, which must outlive it.
class UndirectedView {
public:
    explicit UndirectedView(const DirectedGraph & base);

    const DirectedGraph & base() const { return *base_; }
    std::size_t node_count() const { return neighbours_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const NodeId> neighbours(NodeId v) const { return neighbours_[v]; }
    std::size_t degree(NodeId v) const { return neighbours_[v].size(); }
    bool has_edge(NodeId u, NodeId v) const { return base_->has_arc(u, v) || base_->has_arc(v, u); }

private:
    const DirectedGraph * base_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> neighbours_;
};

using Component = std::vector<NodeId>;

// Components of the subgraph induced by `active`. Members are sorted; the
// components are ordered by their smallest member. Linear time.
std::vector<Component> connected_components(const UndirectedView & g, std::span<const NodeId> active);
std::vector<Component> connected_components(const UndirectedView & g);

// True iff the subgraph induced by `active` is a forest.
bool is_singly_connected(const UndirectedView & g, std::span<const NodeId> active);
bool is_singly_connected(const UndirectedView & g);

enum class DegreeConvention {
    distinct_neighbours, // antiparallel arc pair counts once
    arc_endpoints,       // in-degree + out-degree
};

struct DegreeStats {
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation
};

// Throws std::invalid_argument("empty graph") on a graph with no nodes.
DegreeStats degree_stats(const DirectedGraph & g, DegreeConvention convention = DegreeConvention::distinct_neighbours);

std::vector<NodeId> all_nodes(std::size_t n);

class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x);
    // Returns true when two distinct sets were merged.
    bool unite(std::size_t a, std::size_t b);
    std::size_t set_count() const { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::size_t sets_;
};

} // namespace sipdec
