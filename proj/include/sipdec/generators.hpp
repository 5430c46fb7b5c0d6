#pragma once

#include "sipdec/graph.hpp"
#include "sipdec/model.hpp"
#include "sipdec/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sipdec {

enum class PatternMode {
    embedded,    // pattern is a random connected induced subgraph of the target
    independent, // pattern drawn separately; satisfiability not guaranteed
};

struct RandomParams {
    std::size_t n = 0;  // target nodes
    double eta = 0.0;   // arc probability per ordered pair, in (0, 1]
    double alpha = 0.2; // pattern size fraction, in (0, 1]
    std::uint64_t seed = 0;
    PatternMode mode = PatternMode::embedded;
};

struct MeshParams {
    std::size_t side = 0; // nodes per dimension, >= 2
    std::size_t dims = 0; // >= 2; n = side^dims
    double rho = 0.0;     // extra arcs = floor(rho * n)
    double alpha = 0.2;
    std::uint64_t seed = 0;
    PatternMode mode = PatternMode::embedded;
};

struct GeneratedInstance {
    SipInstance instance;
    // pattern node -> target node, for embedded instances
    std::optional<std::vector<NodeId>> embedding;
};

// ceil(alpha * n), clamped to [1, n].
std::size_t pattern_size(double alpha, std::size_t n);

// Each ordered pair gets an arc with probability eta; while the undirected view
// is disconnected an arc is added from a random node to a random node of
// another component.
DirectedGraph random_connected_digraph(std::size_t n, double eta, Rng & rng);

// Grid of side^dims nodes with arcs both ways between nodes differing by one
// in one coordinate, plus floor(rho * n) random arcs between non-adjacent pairs.
DirectedGraph irregular_mesh(std::size_t side, std::size_t dims, double rho, Rng & rng);

struct ExtractedPattern {
    DirectedGraph pattern;
    std::vector<NodeId> embedding;
};

// Random connected induced subgraph on k nodes, grown from a random seed node
// through random frontier picks, then relabelled randomly. Throws if the
// target's component is too small.
ExtractedPattern extract_connected_pattern(const DirectedGraph & target, std::size_t k, Rng & rng);

GeneratedInstance gen_random(const RandomParams & params);
GeneratedInstance gen_mesh(const MeshParams & params);

// Injective and arc-preserving; independent of the solver.
bool verify_embedding(const SipInstance & instance, std::span<const NodeId> embedding);

} // namespace sipdec
