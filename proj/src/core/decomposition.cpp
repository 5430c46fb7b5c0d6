#include "sipdec/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sipdec {

namespace {

std::vector<NodeId> open_variables(const SearchState & state, std::span<const NodeId> scope)
{
    std::vector<NodeId> active;
    for (auto x : scope)
        if (state.domain_size(x) > 1)
            active.push_back(x);
    std::sort(active.begin(), active.end());
    return active;
}

} // namespace

ReducedGraph build_reduced_graph(const SipInstance & instance, const SearchState & state)
{
    auto all = all_nodes(instance.variable_count());
    return build_reduced_graph(instance, state, all);
}

ReducedGraph build_reduced_graph(const SipInstance & instance, const SearchState & state, std::span<const NodeId> scope)
{
    ReducedGraph m;
    m.active = open_variables(state, scope);
    std::vector<std::uint8_t> is_active(instance.variable_count(), 0);
    for (auto x : m.active)
        is_active[x] = 1;
    for (auto x : m.active)
        for (auto y : instance.neighbours(x))
            if (x < y && is_active[y])
                m.edges.emplace_back(x, y);
    return m;
}

std::optional<DecompositionSplit> detect_decomposition(const SipInstance & instance, const SearchState & state)
{
    auto all = all_nodes(instance.variable_count());
    return detect_decomposition(instance, state, all);
}

std::optional<DecompositionSplit> detect_decomposition(const SipInstance & instance, const SearchState & state,
    std::span<const NodeId> scope)
{
    const auto active = open_variables(state, scope);
    if (active.size() < 2)
        return std::nullopt;

    // Components of M, labelled by a DFS restricted to active variables.
    constexpr std::size_t unlabelled = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(instance.variable_count(), unlabelled);
    std::vector<std::uint8_t> is_active(instance.variable_count(), 0);
    for (auto x : active)
        is_active[x] = 1;

    std::size_t component_count = 0;
    std::vector<NodeId> stack;
    for (auto start : active) {
        if (label[start] != unlabelled)
            continue;
        label[start] = component_count;
        stack.push_back(start);
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : instance.neighbours(x))
                if (is_active[y] && label[y] == unlabelled) {
                    label[y] = component_count;
                    stack.push_back(y);
                }
        }
        ++component_count;
    }
    if (component_count < 2)
        return std::nullopt;

    // Merge components whose domain unions share a value.
    UnionFind groups(component_count);
    std::vector<std::size_t> owner(instance.value_count(), unlabelled);
    for (auto x : active)
        state.domain(x).for_each([&](std::size_t v) {
            if (owner[v] == unlabelled)
                owner[v] = label[x];
            else
                groups.unite(owner[v], label[x]);
        });
    if (groups.set_count() < 2)
        return std::nullopt;

    DecompositionSplit split;
    std::vector<std::size_t> group_index(component_count, unlabelled);
    for (auto x : active) {
        auto root = groups.find(label[x]);
        if (group_index[root] == unlabelled) {
            group_index[root] = split.groups.size();
            split.groups.emplace_back();
        }
        split.groups[group_index[root]].push_back(x);
    }
    for (auto x : scope)
        if (state.domain_size(x) == 1)
            split.shared_assigned.push_back(x);
    std::sort(split.shared_assigned.begin(), split.shared_assigned.end());

#ifndef NDEBUG
    // All-different has already removed every assigned value from the open
    // domains, so assigned variables can never couple two groups.
    for (auto s : split.shared_assigned)
        for (auto x : active)
            assert(!state.domain(x).test(state.value(s)));
#endif
    return split;
}

PartialResult solve_split(const DecompositionSplit & split, const GroupSolver & solve_group, bool enumerate,
    const Solution & base)
{
    PartialResult combined;
    combined.count = 1;
    std::vector<PartialResult> parts;
    for (const auto & group : split.groups) {
        auto part = solve_group(group);
        if (part.count == 0) {
            combined.count = 0;
            combined.solutions.clear();
            return combined;
        }
        combined.count *= part.count;
        if (enumerate)
            parts.push_back(std::move(part));
    }

    if (enumerate) {
        std::vector<Solution> partial{base};
        for (const auto & part : parts) {
            std::vector<Solution> next;
            next.reserve(partial.size() * part.solutions.size());
            for (const auto & prefix : partial)
                for (const auto & sol : part.solutions) {
                    auto merged = prefix;
                    for (std::size_t x = 0; x < sol.size(); ++x)
                        if (sol[x] != no_value)
                            merged[x] = sol[x];
                    next.push_back(std::move(merged));
                }
            partial = std::move(next);
        }
        combined.solutions = std::move(partial);
    }
    return combined;
}

bool PseudoTree::is_chain() const
{
    return std::all_of(children.begin(), children.end(), [](const auto & c) { return c.size() <= 1; });
}

PseudoTree build_pseudo_tree(const UndirectedView & g, NodeId root)
{
    auto all = all_nodes(g.node_count());
    return build_pseudo_tree(g, all, root);
}

PseudoTree build_pseudo_tree(const UndirectedView & g, std::span<const NodeId> active, NodeId root)
{
    const auto n = g.node_count();
    std::vector<std::uint8_t> is_active(n, 0);
    for (auto v : active)
        is_active[v] = 1;
    if (root >= n || !is_active[root])
        throw std::invalid_argument("pseudo-tree root is not an active node");

    PseudoTree tree;
    tree.root = root;
    tree.parent.assign(n, no_value);
    tree.children.assign(n, {});

    std::vector<std::uint8_t> visited(n, 0);
    // (node, index of the next neighbour to try)
    std::vector<std::pair<NodeId, std::size_t>> stack;
    visited[root] = 1;
    tree.order.push_back(root);
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
        auto & [v, next] = stack.back();
        auto nbrs = g.neighbours(v);
        while (next < nbrs.size() && (!is_active[nbrs[next]] || visited[nbrs[next]]))
            ++next;
        if (next == nbrs.size()) {
            stack.pop_back();
            continue;
        }
        auto w = nbrs[next++];
        visited[w] = 1;
        tree.parent[w] = v;
        tree.children[v].push_back(w);
        tree.order.push_back(w);
        stack.emplace_back(w, 0);
    }

    if (tree.order.size() != active.size())
        throw std::invalid_argument("pseudo-tree input is disconnected; decompose it first");
    assert(has_back_arc_property(g, tree));
    return tree;
}

bool has_back_arc_property(const UndirectedView & g, const PseudoTree & tree)
{
    const auto n = g.node_count();
    std::vector<std::uint8_t> in_tree(n, 0);
    for (auto v : tree.order)
        in_tree[v] = 1;

    auto is_ancestor = [&](NodeId a, NodeId v) {
        for (auto p = tree.parent[v]; p != no_value; p = tree.parent[p])
            if (p == a)
                return true;
        return false;
    };

    for (auto u : tree.order)
        for (auto v : g.neighbours(u)) {
            if (!in_tree[v] || u > v)
                continue;
            if (tree.parent[u] == v || tree.parent[v] == u)
                continue;
            if (!is_ancestor(u, v) && !is_ancestor(v, u))
                return false;
        }
    return true;
}

} // namespace sipdec
