#include "sipdec/model.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sipdec {

SipInstance::SipInstance(DirectedGraph pattern, DirectedGraph target) :
    pattern_(std::move(pattern)),
    target_(std::move(target))
{
    if (pattern_.node_count() == 0)
        throw std::invalid_argument("pattern graph has no nodes");
    if (target_.node_count() == 0)
        throw std::invalid_argument("target graph has no nodes");

    constraints_ = pattern_.arcs();
    incident_.resize(pattern_.node_count());
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
        incident_[constraints_[c].first].push_back(c);
        incident_[constraints_[c].second].push_back(c);
    }

    UndirectedView view(pattern_);
    neighbours_.resize(pattern_.node_count());
    for (NodeId x = 0; x < pattern_.node_count(); ++x) {
        auto nbrs = view.neighbours(x);
        neighbours_[x].assign(nbrs.begin(), nbrs.end());
    }
}

SearchState::SearchState(const SipInstance & instance, bool degree_prefilter) :
    instance_(&instance),
    domains_(instance.variable_count(), Bitset(instance.value_count(), true)),
    sizes_(instance.variable_count(), instance.value_count()),
    saved_epoch_(instance.variable_count(), 0),
    constraint_queued_(instance.constraints().size(), 0)
{
    const auto & pattern = instance.pattern();
    const auto & target = instance.target();
    if (degree_prefilter) {
        for (NodeId x = 0; x < pattern.node_count(); ++x) {
            auto & d = domains_[x];
            for (NodeId v = 0; v < target.node_count(); ++v)
                if (target.successors(v).size() < pattern.successors(x).size()
                    || target.predecessors(v).size() < pattern.predecessors(x).size())
                    d.reset(v);
            sizes_[x] = d.count();
        }
    }
    for (NodeId x = 0; x < pattern.node_count(); ++x)
        if (sizes_[x] == 1) {
            ++assigned_count_;
            fixed_queue_.push_back(x);
        }
}

NodeId SearchState::value(NodeId x) const
{
    assert(sizes_[x] == 1);
    return static_cast<NodeId>(domains_[x].find_first());
}

bool SearchState::has_empty_domain() const
{
    return std::find(sizes_.begin(), sizes_.end(), std::size_t{0}) != sizes_.end();
}

SearchState::Mark SearchState::checkpoint()
{
    marks_.push_back({trail_.size(), next_epoch_++});
    return {marks_.size() - 1};
}

void SearchState::restore(Mark mark)
{
    assert(!marks_.empty() && mark.level == marks_.size() - 1 && "restoring a stale or non-innermost mark");
    auto target_size = marks_.back().trail_size;
    while (trail_.size() > target_size) {
        auto & entry = trail_.back();
        auto x = entry.variable;
        if (sizes_[x] == 1 && entry.size != 1)
            --assigned_count_;
        else if (sizes_[x] != 1 && entry.size == 1)
            ++assigned_count_;
        domains_[x] = std::move(entry.domain);
        sizes_[x] = entry.size;
        trail_.pop_back();
    }
    marks_.pop_back();
    clear_queues();
    static_cast<void>(mark);
}

void SearchState::save(NodeId x)
{
    // Nothing can be restored below the outermost mark.
    if (marks_.empty())
        return;
    auto epoch = marks_.back().epoch;
    if (saved_epoch_[x] == epoch)
        return;
    saved_epoch_[x] = epoch;
    trail_.push_back({x, sizes_[x], domains_[x]});
}

bool SearchState::after_change(NodeId x, std::size_t old_size)
{
    auto size = domains_[x].count();
    sizes_[x] = size;
    if (size == 1 && old_size != 1) {
        ++assigned_count_;
        fixed_queue_.push_back(x);
    }
    else if (size != 1 && old_size == 1)
        --assigned_count_;
    if (size == 0)
        return false;
    enqueue_constraints_of(x);
    return true;
}

bool SearchState::intersect(NodeId x, const Bitset & allowed)
{
    if (domains_[x].is_subset_of(allowed))
        return sizes_[x] != 0;
    save(x);
    auto old = sizes_[x];
    domains_[x] &= allowed;
    return after_change(x, old);
}

bool SearchState::remove(NodeId x, NodeId value)
{
    if (!domains_[x].test(value))
        return sizes_[x] != 0;
    save(x);
    auto old = sizes_[x];
    domains_[x].reset(value);
    return after_change(x, old);
}

bool SearchState::fix(NodeId x, NodeId value)
{
    assert(domains_[x].test(value));
    if (sizes_[x] == 1)
        return true;
    save(x);
    auto old = sizes_[x];
    domains_[x].clear();
    domains_[x].set(value);
    return after_change(x, old);
}

NodeId SearchState::pop_fixed()
{
    auto x = fixed_queue_.back();
    fixed_queue_.pop_back();
    return x;
}

std::size_t SearchState::pop_constraint()
{
    auto c = constraint_queue_.back();
    constraint_queue_.pop_back();
    constraint_queued_[c] = 0;
    return c;
}

void SearchState::enqueue_constraints_of(NodeId x)
{
    for (auto c : instance_->incident_constraints(x))
        if (!constraint_queued_[c]) {
            constraint_queued_[c] = 1;
            constraint_queue_.push_back(c);
        }
}

void SearchState::enqueue_all_constraints()
{
    for (std::size_t c = constraint_queued_.size(); c-- > 0;)
        if (!constraint_queued_[c]) {
            constraint_queued_[c] = 1;
            constraint_queue_.push_back(c);
        }
}

void SearchState::clear_queues()
{
    fixed_queue_.clear();
    for (auto c : constraint_queue_)
        constraint_queued_[c] = 0;
    constraint_queue_.clear();
}

bool propagate_alldiff_fc(SearchState & state, NodeId x)
{
    auto v = state.value(x);
    for (NodeId y = 0; y < state.variable_count(); ++y)
        if (y != x && !state.remove(y, v))
            return false;
    return true;
}

bool propagate_mc_fc(SearchState & state, NodeId x)
{
    const auto & pattern = state.instance().pattern();
    const auto & target = state.instance().target();
    auto v = state.value(x);
    for (auto j : pattern.successors(x))
        if (!state.intersect(j, target.out_row(v)))
            return false;
    for (auto j : pattern.predecessors(x))
        if (!state.intersect(j, target.in_row(v)))
            return false;
    return true;
}

namespace {

// Keeps in D(i) the values with a successor in D(j) and in D(j) the values
// with a predecessor in D(i).
bool revise(SearchState & state, const Arc & arc, Bitset & scratch)
{
    const auto & target = state.instance().target();
    auto [i, j] = arc;

    scratch.clear();
    const auto & dj = state.domain(j);
    state.domain(i).for_each([&](std::size_t u) {
        if (target.out_row(static_cast<NodeId>(u)).intersects(dj))
            scratch.set(u);
    });
    if (!state.intersect(i, scratch))
        return false;

    scratch.clear();
    const auto & di = state.domain(i);
    state.domain(j).for_each([&](std::size_t w) {
        if (target.in_row(static_cast<NodeId>(w)).intersects(di))
            scratch.set(w);
    });
    return state.intersect(j, scratch);
}

bool drain(SearchState & state, Consistency level)
{
    const auto & constraints = state.instance().constraints();
    Bitset scratch(state.instance().value_count());
    while (true) {
        if (state.has_pending_fixed()) {
            auto x = state.pop_fixed();
            // A later narrowing may have emptied it; that failure was reported
            // at the time.
            if (!state.is_assigned(x))
                continue;
            if (!propagate_alldiff_fc(state, x) || !propagate_mc_fc(state, x))
                return false;
        }
        else if (level == Consistency::arc_consistency && state.has_pending_constraints()) {
            if (!revise(state, constraints[state.pop_constraint()], scratch))
                return false;
        }
        else
            return true;
    }
}

} // namespace

bool propagate(SearchState & state, Consistency level, bool revise_all)
{
    if (revise_all && level == Consistency::arc_consistency)
        state.enqueue_all_constraints();
    bool ok = drain(state, level);
    state.clear_queues();
    return ok;
}

bool propagate_mc_ac(SearchState & state)
{
    return propagate(state, Consistency::arc_consistency, true);
}

bool assign(SearchState & state, NodeId x, NodeId value, Consistency level)
{
    assert(state.domain(x).test(value) && "assigned value must be in the domain");
    if (!state.fix(x, value)) {
        state.clear_queues();
        return false;
    }
    return propagate(state, level);
}

} // namespace sipdec
