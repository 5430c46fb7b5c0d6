#pragma once

#include "sipdec/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace sipdec {

struct OracleLimits {
    std::size_t max_pattern_nodes = 8;
    std::size_t max_target_nodes = 16;
    // Bound on the number of partial injective maps the enumeration may visit.
    std::uint64_t hard_step_limit = 1'000'000'000;
};

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Number of partial injective maps visited when enumerating every injective
// map from p pattern nodes into t target nodes (saturating).
std::uint64_t oracle_steps(std::size_t pattern_nodes, std::size_t target_nodes);

// Enumerates every injective map V_p -> V_t in lexicographic order, rejecting
// only repeated values on the way down, and counts the maps that carry every
// pattern arc onto a target arc. Refuses (OracleRefused) before searching if
// the instance exceeds the limits.
boost::multiprecision::cpp_int brute_force_count(const SipInstance & instance, const OracleLimits & limits = {});

} // namespace sipdec
