#include "sipdec/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sipdec {

std::size_t pattern_size(double alpha, std::size_t n)
{
    auto k = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

DirectedGraph random_connected_digraph(std::size_t n, double eta, Rng & rng)
{
    DirectedGraph g(n);
    UnionFind components(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if (u != v && rng.chance(eta)) {
                g.add_arc(u, v);
                components.unite(u, v);
            }

    while (components.set_count() > 1) {
        auto u = static_cast<NodeId>(rng.below(n));
        NodeId v;
        do
            v = static_cast<NodeId>(rng.below(n));
        while (components.find(u) == components.find(v));
        g.add_arc(u, v);
        components.unite(u, v);
    }
    return g;
}

DirectedGraph irregular_mesh(std::size_t side, std::size_t dims, double rho, Rng & rng)
{
    if (side < 2 || dims < 2)
        throw std::invalid_argument("mesh needs side >= 2 and dims >= 2");
    if (rho < 0.0)
        throw std::invalid_argument("rho must be non-negative");

    std::size_t n = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        if (n > (std::size_t{1} << 24) / side)
            throw std::invalid_argument("mesh too large");
        n *= side;
    }

    DirectedGraph g(n);
    std::size_t stride = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t v = 0; v < n; ++v) {
            auto coord = (v / stride) % side;
            if (coord + 1 < side) {
                auto w = v + stride;
                g.add_arc(static_cast<NodeId>(v), static_cast<NodeId>(w));
                g.add_arc(static_cast<NodeId>(w), static_cast<NodeId>(v));
            }
        }
        stride *= side;
    }

    auto extra = static_cast<std::size_t>(std::floor(rho * static_cast<double>(n) + 1e-9));
    UndirectedView view(g);
    const auto free_pairs = n * (n - 1) / 2 - view.edge_count();
    if (extra > free_pairs)
        throw std::invalid_argument("mesh has only " + std::to_string(free_pairs) + " non-adjacent pairs for "
            + std::to_string(extra) + " extra arcs");
    for (std::size_t added = 0; added < extra;) {
        auto u = static_cast<NodeId>(rng.below(n));
        auto v = static_cast<NodeId>(rng.below(n));
        if (u == v || g.has_arc(u, v) || g.has_arc(v, u))
            continue;
        g.add_arc(u, v);
        ++added;
    }
    return g;
}

ExtractedPattern extract_connected_pattern(const DirectedGraph & target, std::size_t k, Rng & rng)
{
    const auto n = target.node_count();
    if (k == 0 || k > n)
        throw std::invalid_argument("pattern size must be in [1, target size]");

    UndirectedView view(target);
    std::vector<std::uint8_t> state(n, 0); // 1 = frontier, 2 = chosen
    std::vector<NodeId> chosen, frontier;
    auto take = [&](NodeId v) {
        state[v] = 2;
        chosen.push_back(v);
        for (auto w : view.neighbours(v))
            if (state[w] == 0) {
                state[w] = 1;
                frontier.push_back(w);
            }
    };

    take(static_cast<NodeId>(rng.below(n)));
    while (chosen.size() < k) {
        if (frontier.empty())
            throw std::invalid_argument("target component smaller than requested pattern");
        auto i = rng.below(frontier.size());
        auto v = frontier[i];
        frontier[i] = frontier.back();
        frontier.pop_back();
        take(v);
    }

    rng.shuffle(std::span<NodeId>(chosen));
    constexpr NodeId no_label = ~NodeId{0};
    std::vector<NodeId> label(n, no_label);
    for (NodeId i = 0; i < k; ++i)
        label[chosen[i]] = i;

    ExtractedPattern result{DirectedGraph(k), chosen};
    for (NodeId i = 0; i < k; ++i)
        for (auto w : target.successors(chosen[i]))
            if (label[w] != no_label)
                result.pattern.add_arc(i, label[w]);
    return result;
}

namespace {

void check_common(double alpha, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("target must have at least one node");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1]");
}

GeneratedInstance with_pattern(DirectedGraph target, double alpha, double independent_eta, PatternMode mode, Rng & rng)
{
    auto k = pattern_size(alpha, target.node_count());
    if (mode == PatternMode::embedded) {
        auto extracted = extract_connected_pattern(target, k, rng);
        return {SipInstance(std::move(extracted.pattern), std::move(target)), std::move(extracted.embedding)};
    }
    auto pattern = random_connected_digraph(k, independent_eta, rng);
    return {SipInstance(std::move(pattern), std::move(target)), std::nullopt};
}

} // namespace

GeneratedInstance gen_random(const RandomParams & params)
{
    check_common(params.alpha, params.n);
    if (!(params.eta > 0.0 && params.eta <= 1.0))
        throw std::invalid_argument("eta must lie in (0, 1]");
    Rng rng(params.seed);
    auto target = random_connected_digraph(params.n, params.eta, rng);
    return with_pattern(std::move(target), params.alpha, params.eta, params.mode, rng);
}

GeneratedInstance gen_mesh(const MeshParams & params)
{
    Rng rng(params.seed);
    auto target = irregular_mesh(params.side, params.dims, params.rho, rng);
    check_common(params.alpha, target.node_count());
    // Independent patterns reuse the target's arc density.
    const double n = static_cast<double>(target.node_count());
    const double density = std::clamp(static_cast<double>(target.arc_count()) / (n * (n - 1.0)), 1e-9, 1.0);
    return with_pattern(std::move(target), params.alpha, density, params.mode, rng);
}

bool verify_embedding(const SipInstance & instance, std::span<const NodeId> embedding)
{
    const auto & pattern = instance.pattern();
    const auto & target = instance.target();
    if (embedding.size() != pattern.node_count())
        return false;
    std::vector<std::uint8_t> used(target.node_count(), 0);
    for (auto t : embedding) {
        if (t >= target.node_count() || used[t])
            return false;
        used[t] = 1;
    }
    for (auto [u, v] : pattern.arcs())
        if (!target.has_arc(embedding[u], embedding[v]))
            return false;
    return true;
}

} // namespace sipdec
