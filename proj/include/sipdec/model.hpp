#pragma once

#include "sipdec/bitset.hpp"
#include "sipdec/graph.hpp"

#include <cstddef>
#include <vector>

namespace sipdec {

// A pattern/target pair. One variable per pattern node, valued over target
// nodes; one binary morphism constraint per pattern arc plus a global
// all-different over every variable.
class SipInstance {
public:
    // Throws std::invalid_argument if either graph has no nodes.
    SipInstance(DirectedGraph pattern, DirectedGraph target);

    const DirectedGraph & pattern() const { return pattern_; }
    const DirectedGraph & target() const { return target_; }
    std::size_t variable_count() const { return pattern_.node_count(); }
    std::size_t value_count() const { return target_.node_count(); }

    // Pattern arcs, sorted; index i is morphism constraint i.
    const std::vector<Arc> & constraints() const { return constraints_; }
    const std::vector<std::size_t> & incident_constraints(NodeId x) const { return incident_[x]; }
    // Distinct undirected pattern neighbours.
    const std::vector<NodeId> & neighbours(NodeId x) const { return neighbours_[x]; }

private:
    DirectedGraph pattern_;
    DirectedGraph target_;
    std::vector<Arc> constraints_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::vector<NodeId>> neighbours_;
};

enum class Consistency {
    forward_checking,
    arc_consistency,
};

// Domains plus a chronological trail. A variable counts as assigned exactly
// when its domain is a singleton. Every variable that becomes a singleton is
// queued so that propagate() can run its assignment propagators.
class SearchState {
public:
    struct Mark {
        std::size_t level;
    };

    // With degree_prefilter, each domain starts as the target nodes whose in-
    // and out-degrees cover the pattern node's; otherwise every domain is the
    // full target node set.
    explicit SearchState(const SipInstance & instance, bool degree_prefilter = false);

    const SipInstance & instance() const { return *instance_; }
    std::size_t variable_count() const { return domains_.size(); }
    const Bitset & domain(NodeId x) const { return domains_[x]; }
    std::size_t domain_size(NodeId x) const { return sizes_[x]; }
    bool is_assigned(NodeId x) const { return sizes_[x] == 1; }
    NodeId value(NodeId x) const;
    std::size_t assigned_count() const { return assigned_count_; }
    bool has_empty_domain() const;

    Mark checkpoint();
    // Marks nest; only the innermost open mark may be restored.
    void restore(Mark mark);
    std::size_t open_marks() const { return marks_.size(); }

    // Narrowing primitives. Each returns false iff the domain is now empty.
    bool intersect(NodeId x, const Bitset & allowed);
    bool remove(NodeId x, NodeId value);
    bool fix(NodeId x, NodeId value);

    // Propagation work lists.
    bool has_pending_fixed() const { return !fixed_queue_.empty(); }
    NodeId pop_fixed();
    bool has_pending_constraints() const { return !constraint_queue_.empty(); }
    std::size_t pop_constraint();
    void enqueue_all_constraints();
    void clear_queues();

private:
    struct TrailEntry {
        NodeId variable;
        std::size_t size;
        Bitset domain;
    };
    struct MarkRecord {
        std::size_t trail_size;
        std::size_t epoch;
    };

    void save(NodeId x);
    bool after_change(NodeId x, std::size_t old_size);
    void enqueue_constraints_of(NodeId x);

    const SipInstance * instance_;
    std::vector<Bitset> domains_;
    std::vector<std::size_t> sizes_;
    std::size_t assigned_count_ = 0;

    std::vector<TrailEntry> trail_;
    std::vector<MarkRecord> marks_;
    std::vector<std::size_t> saved_epoch_;
    std::size_t next_epoch_ = 1;

    std::vector<NodeId> fixed_queue_;
    std::vector<std::size_t> constraint_queue_;
    std::vector<std::uint8_t> constraint_queued_;
};

// Removes the value of the assigned variable x from every other domain.
bool propagate_alldiff_fc(SearchState & state, NodeId x);

// Forward checking of the morphism constraints touching the assigned x.
bool propagate_mc_fc(SearchState & state, NodeId x);

// AC-3 over all morphism constraints to fixpoint. Alldiff stays at FC: the
// value of each variable that becomes a singleton is removed elsewhere.
bool propagate_mc_ac(SearchState & state);

// Drains the pending work: assignment propagators for newly fixed variables,
// and, at arc consistency, revision of queued morphism constraints. With
// revise_all every constraint is queued first. Returns false on a wipeout.
bool propagate(SearchState & state, Consistency level, bool revise_all = false);

// Precondition: value is in D(x). Fixes x and propagates at `level`.
bool assign(SearchState & state, NodeId x, NodeId value, Consistency level);

} // namespace sipdec
