#include "sipdec/oracle.hpp"

#include <limits>
#include <string>
#include <vector>

namespace sipdec {

std::uint64_t oracle_steps(std::size_t pattern_nodes, std::size_t target_nodes)
{
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0, level = 1;
    for (std::size_t i = 0; i < pattern_nodes; ++i) {
        if (i >= target_nodes)
            break;
        auto choices = static_cast<std::uint64_t>(target_nodes - i);
        if (level > max / choices)
            return max;
        level *= choices;
        if (total > max - level)
            return max;
        total += level;
    }
    return total;
}

boost::multiprecision::cpp_int brute_force_count(const SipInstance & instance, const OracleLimits & limits)
{
    const auto & pattern = instance.pattern();
    const auto & target = instance.target();
    const auto p = pattern.node_count();
    const auto t = target.node_count();

    if (p > limits.max_pattern_nodes)
        throw OracleRefused("pattern has " + std::to_string(p) + " nodes; oracle limit is "
            + std::to_string(limits.max_pattern_nodes));
    if (t > limits.max_target_nodes)
        throw OracleRefused("target has " + std::to_string(t) + " nodes; oracle limit is "
            + std::to_string(limits.max_target_nodes));
    if (oracle_steps(p, t) > limits.hard_step_limit)
        throw OracleRefused("enumeration would exceed the step limit of " + std::to_string(limits.hard_step_limit));
    if (p > t)
        return 0;

    const auto arcs = pattern.arcs();
    std::vector<std::size_t> map(p, 0);
    std::vector<std::uint8_t> used(t, 0);
    std::uint64_t count = 0;

    // Iterative odometer over injective maps: map[depth] is the next value to try.
    std::size_t depth = 0;
    map[0] = 0;
    while (true) {
        if (map[depth] == t) {
            if (depth == 0)
                break;
            --depth;
            used[map[depth]] = 0;
            ++map[depth];
            continue;
        }
        if (used[map[depth]]) {
            ++map[depth];
            continue;
        }
        if (depth + 1 == p) {
            bool ok = true;
            for (auto [u, v] : arcs)
                if (!target.has_arc(static_cast<NodeId>(map[u]), static_cast<NodeId>(map[v]))) {
                    ok = false;
                    break;
                }
            if (ok)
                ++count;
            ++map[depth];
            continue;
        }
        used[map[depth]] = 1;
        ++depth;
        map[depth] = 0;
    }
    return count;
}

} // namespace sipdec
