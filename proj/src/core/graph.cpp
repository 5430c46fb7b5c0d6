#include "sipdec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sipdec {

DirectedGraph::DirectedGraph(std::size_t node_count, bool allow_self_loops) :
    allow_self_loops_(allow_self_loops),
    out_adj_(node_count),
    in_adj_(node_count),
    out_rows_(node_count, Bitset(node_count)),
    in_rows_(node_count, Bitset(node_count))
{
}

bool DirectedGraph::add_arc(NodeId from, NodeId to)
{
    if (from >= node_count() || to >= node_count())
        throw std::out_of_range("arc (" + std::to_string(from) + "," + std::to_string(to) + ") outside graph of "
            + std::to_string(node_count()) + " nodes");
    if (from == to && !allow_self_loops_)
        throw std::invalid_argument("self-loop on node " + std::to_string(from));
    if (out_rows_[from].test(to))
        return false;

    auto & out = out_adj_[from];
    out.insert(std::lower_bound(out.begin(), out.end(), to), to);
    auto & in = in_adj_[to];
    in.insert(std::lower_bound(in.begin(), in.end(), from), from);
    out_rows_[from].set(to);
    in_rows_[to].set(from);
    ++arc_count_;
    return true;
}

std::vector<Arc> DirectedGraph::arcs() const
{
    std::vector<Arc> result;
    result.reserve(arc_count_);
    for (NodeId u = 0; u < node_count(); ++u)
        for (auto v : out_adj_[u])
            result.emplace_back(u, v);
    return result;
}

UndirectedView::UndirectedView(const DirectedGraph & base) :
    base_(&base),
    neighbours_(base.node_count())
{
    for (NodeId v = 0; v < base.node_count(); ++v) {
        auto & nbrs = neighbours_[v];
        auto out = base.successors(v);
        auto in = base.predecessors(v);
        nbrs.reserve(out.size() + in.size());
        std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(nbrs));
        // self-loops are not undirected edges
        nbrs.erase(std::remove(nbrs.begin(), nbrs.end(), v), nbrs.end());
        edge_count_ += nbrs.size();
    }
    edge_count_ /= 2;
}

std::vector<NodeId> all_nodes(std::size_t n)
{
    std::vector<NodeId> result(n);
    std::iota(result.begin(), result.end(), NodeId{0});
    return result;
}

std::vector<Component> connected_components(const UndirectedView & g, std::span<const NodeId> active)
{
    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> in_set(n, 0);
    for (auto v : active)
        in_set[v] = 1;

    std::vector<NodeId> sorted(active.begin(), active.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<Component> result;
    std::vector<NodeId> stack;
    for (auto start : sorted) {
        if (in_set[start] != 1)
            continue;
        Component comp;
        in_set[start] = 2;
        stack.push_back(start);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (auto w : g.neighbours(v))
                if (in_set[w] == 1) {
                    in_set[w] = 2;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

std::vector<Component> connected_components(const UndirectedView & g)
{
    auto nodes = all_nodes(g.node_count());
    return connected_components(g, nodes);
}

bool is_singly_connected(const UndirectedView & g, std::span<const NodeId> active)
{
    std::vector<std::uint8_t> in_set(g.node_count(), 0);
    for (auto v : active)
        in_set[v] = 1;

    // A graph is a forest iff |E| = |V| - #components.
    std::size_t edges = 0;
    for (auto v : active)
        for (auto w : g.neighbours(v))
            if (in_set[w] && v < w)
                ++edges;
    auto components = connected_components(g, active);
    return edges + components.size() == active.size();
}

bool is_singly_connected(const UndirectedView & g)
{
    auto nodes = all_nodes(g.node_count());
    return is_singly_connected(g, nodes);
}

DegreeStats degree_stats(const DirectedGraph & g, DegreeConvention convention)
{
    if (g.node_count() == 0)
        throw std::invalid_argument("empty graph");

    std::vector<double> degrees(g.node_count());
    if (convention == DegreeConvention::distinct_neighbours) {
        UndirectedView view(g);
        for (NodeId v = 0; v < g.node_count(); ++v)
            degrees[v] = static_cast<double>(view.degree(v));
    }
    else {
        for (NodeId v = 0; v < g.node_count(); ++v)
            degrees[v] = static_cast<double>(g.successors(v).size() + g.predecessors(v).size());
    }

    const double n = static_cast<double>(degrees.size());
    const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) / n;
    double sq = 0.0;
    for (auto d : degrees)
        sq += (d - mean) * (d - mean);
    return {mean, std::sqrt(sq / n)};
}

UnionFind::UnionFind(std::size_t n) :
    parent_(n),
    rank_(n, 0),
    sets_(n)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x)
{
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b)
{
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (rank_[a] < rank_[b])
        std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b])
        ++rank_[a];
    --sets_;
    return true;
}

} // namespace sipdec
