#include "sipdec/heuristics.hpp"

#include "sipdec/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sipdec {

namespace {

std::size_t arc_degree(const DirectedGraph & g, NodeId v)
{
    return g.successors(v).size() + g.predecessors(v).size();
}

HeuristicResult make_result(const UndirectedView & pattern, std::vector<NodeId> vars)
{
    const auto & base = pattern.base();
    std::sort(vars.begin(), vars.end(), [&](NodeId a, NodeId b) {
        auto da = arc_degree(base, a), db = arc_degree(base, b);
        return da != db ? da > db : a < b;
    });
    HeuristicResult result;
    result.fraction = pattern.node_count() == 0
        ? 0.0
        : static_cast<double>(vars.size()) / static_cast<double>(pattern.node_count());
    result.body_vars = std::move(vars);
    return result;
}

std::size_t count_cut(const UndirectedView & g, const std::vector<std::uint8_t> & side)
{
    std::size_t cut = 0;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (auto v : g.neighbours(u))
            if (u < v && side[u] != side[v])
                ++cut;
    return cut;
}

// external - internal edges of v
long move_gain(const UndirectedView & g, const std::vector<std::uint8_t> & side, NodeId v)
{
    long gain = 0;
    for (auto w : g.neighbours(v))
        gain += side[w] != side[v] ? 1 : -1;
    return gain;
}

} // namespace

HeuristicResult cycle_heuristic(const UndirectedView & pattern)
{
    const auto n = pattern.node_count();
    std::vector<std::size_t> degree(n);
    std::vector<std::uint8_t> removed(n, 0);
    std::vector<NodeId> queue;
    for (NodeId v = 0; v < n; ++v) {
        degree[v] = pattern.degree(v);
        if (degree[v] <= 1)
            queue.push_back(v);
    }
    // Peeling degree-0 nodes too makes every tree vanish completely.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto v = queue[head];
        removed[v] = 1;
        for (auto w : pattern.neighbours(v))
            if (!removed[w] && degree[w]-- == 2)
                queue.push_back(w);
    }

    std::vector<NodeId> body;
    for (NodeId v = 0; v < n; ++v)
        if (!removed[v])
            body.push_back(v);
    return make_result(pattern, std::move(body));
}

std::size_t balance_tolerance(std::size_t n, double balance)
{
    return static_cast<std::size_t>(std::ceil(balance * static_cast<double>(n) - 1e-9));
}

bool is_balanced(std::size_t side0, std::size_t n, std::size_t tolerance)
{
    if (side0 == 0 || side0 >= n)
        return false;
    auto twice = 2 * side0;
    auto diff = twice > n ? twice - n : n - twice;
    return diff <= 2 * tolerance;
}

Bipartition bipartition(const UndirectedView & g, std::uint64_t seed, const PartitionOptions & options)
{
    const auto n = g.node_count();
    Bipartition best;
    best.side.assign(n, 0);
    if (n < 2)
        return best;

    const auto tolerance = balance_tolerance(n, options.balance);
    Rng rng(seed);
    std::size_t best_cut = std::numeric_limits<std::size_t>::max();

    for (std::size_t restart = 0; restart < std::max<std::size_t>(options.restarts, 1); ++restart) {
        auto order = all_nodes(n);
        rng.shuffle(std::span<NodeId>(order));
        std::vector<std::uint8_t> side(n, 1);
        for (std::size_t i = 0; i < n / 2; ++i)
            side[order[i]] = 0;
        std::size_t side0 = n / 2;
        std::size_t cut = count_cut(g, side);

        while (true) {
            const auto pass_start_cut = cut;
            std::vector<std::uint8_t> locked(n, 0);
            std::vector<NodeId> moves;
            std::size_t pass_best_cut = cut, pass_best_prefix = 0;

            while (true) {
                std::optional<NodeId> pick;
                long pick_gain = std::numeric_limits<long>::min();
                for (NodeId v = 0; v < n; ++v) {
                    if (locked[v])
                        continue;
                    auto after = side[v] == 0 ? side0 - 1 : side0 + 1;
                    if (!is_balanced(after, n, tolerance))
                        continue;
                    auto gain = move_gain(g, side, v);
                    if (gain > pick_gain) {
                        pick_gain = gain;
                        pick = v;
                    }
                }
                if (!pick)
                    break;
                auto v = *pick;
                side0 = side[v] == 0 ? side0 - 1 : side0 + 1;
                side[v] ^= 1;
                locked[v] = 1;
                cut = static_cast<std::size_t>(static_cast<long>(cut) - pick_gain);
                moves.push_back(v);
                if (cut < pass_best_cut) {
                    pass_best_cut = cut;
                    pass_best_prefix = moves.size();
                }
            }

            while (moves.size() > pass_best_prefix) {
                auto v = moves.back();
                moves.pop_back();
                side0 = side[v] == 0 ? side0 - 1 : side0 + 1;
                side[v] ^= 1;
            }
            cut = pass_best_cut;
            if (cut >= pass_start_cut)
                break;
        }

        if (cut < best_cut) {
            best_cut = cut;
            best.side = side;
        }
    }

    for (NodeId u = 0; u < n; ++u)
        for (auto v : g.neighbours(u))
            if (u < v && best.side[u] != best.side[v])
                best.cut_edges.emplace_back(u, v);
    return best;
}

std::vector<NodeId> greedy_nodecut(const UndirectedView & g, std::span<const std::pair<NodeId, NodeId>> cut_edges)
{
    std::vector<std::size_t> uncovered(g.node_count(), 0);
    for (auto [u, v] : cut_edges) {
        ++uncovered[u];
        ++uncovered[v];
    }
    std::vector<std::uint8_t> covered(cut_edges.size(), 0);
    std::size_t remaining = cut_edges.size();
    std::vector<NodeId> cut;
    while (remaining > 0) {
        NodeId pick = 0;
        for (NodeId v = 1; v < g.node_count(); ++v)
            if (uncovered[v] > uncovered[pick])
                pick = v;
        cut.push_back(pick);
        for (std::size_t e = 0; e < cut_edges.size(); ++e) {
            auto [u, v] = cut_edges[e];
            if (!covered[e] && (u == pick || v == pick)) {
                covered[e] = 1;
                --uncovered[u];
                --uncovered[v];
                --remaining;
            }
        }
    }
    return cut;
}

HeuristicResult partition_heuristic(const UndirectedView & pattern, std::uint64_t seed, const PartitionOptions & options)
{
    auto parts = bipartition(pattern, seed, options);
    return make_result(pattern, greedy_nodecut(pattern, parts.cut_edges));
}

std::optional<NodeId> select_variable(const SearchState & state, SelectionPolicy policy, std::span<const NodeId> candidates)
{
    const auto & instance = state.instance();
    std::optional<NodeId> best;
    std::size_t best_degree = 0, best_size = 0;
    for (auto x : candidates) {
        if (state.is_assigned(x))
            continue;
        std::size_t degree = 0;
        if (policy == SelectionPolicy::maxcstr)
            for (auto c : instance.incident_constraints(x)) {
                auto [i, j] = instance.constraints()[c];
                if (!state.is_assigned(i == x ? j : i))
                    ++degree;
            }
        auto size = state.domain_size(x);
        bool better = !best
            || degree > best_degree
            || (degree == best_degree && size < best_size)
            || (degree == best_degree && size == best_size && x < *best);
        if (better) {
            best = x;
            best_degree = degree;
            best_size = size;
        }
    }
    return best;
}

std::optional<NodeId> select_variable(const SearchState & state, SelectionPolicy policy)
{
    auto all = all_nodes(state.variable_count());
    return select_variable(state, policy, all);
}

std::optional<NodeId> select_static(const SearchState & state, std::span<const NodeId> order)
{
    for (auto x : order)
        if (!state.is_assigned(x))
            return x;
    return std::nullopt;
}

} // namespace sipdec
