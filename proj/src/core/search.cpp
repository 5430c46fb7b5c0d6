#include "sipdec/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sipdec {

using Clock = std::chrono::steady_clock;

std::string_view model_name(Model model)
{
    switch (model) {
    case Model::cpfc: return "cpfc";
    case Model::cpac: return "cpac";
    case Model::dec: return "dec";
    case Model::dec_h1: return "dec-h1";
    case Model::dec_h2: return "dec-h2";
    }
    return "?";
}

std::optional<Model> parse_model(std::string_view name)
{
    if (name == "cpfc") return Model::cpfc;
    if (name == "cpac") return Model::cpac;
    if (name == "dec") return Model::dec;
    if (name == "dec-h1" || name == "dec_h1") return Model::dec_h1;
    if (name == "dec-h2" || name == "dec_h2") return Model::dec_h2;
    return std::nullopt;
}

namespace {

bool is_hybrid(Model m)
{
    return m == Model::dec || m == Model::dec_h1 || m == Model::dec_h2;
}

enum class Phase {
    plain,     // cpfc / cpac throughout
    static_fc, // hybrid models before the switch
    dynamic,   // hybrid models after the switch
};

class Solver {
public:
    Solver(const SipInstance & instance, const ModelConfig & config, SearchState & state, SolveResult & stats) :
        instance_(instance),
        config_(config),
        state_(state),
        stats_(stats),
        in_body_(instance.variable_count(), 0)
    {
        if (config.time_limit_s > 0.0)
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                std::chrono::duration<double>(config.time_limit_s));
        auto n = static_cast<double>(instance.variable_count());
        cap_ = static_cast<std::size_t>(std::ceil(config.switch_fraction * n - 1e-9));
        decompose_ = is_hybrid(config.model) && !config.disable_decomposition;
    }

    void set_body(std::vector<NodeId> body)
    {
        body_ = std::move(body);
        for (auto x : body_)
            in_body_[x] = 1;
        never_switch_ = config_.switch_rule == SwitchRule::body_or_cap_except_full_cover
            && body_.size() == instance_.variable_count() && body_.size() > cap_;
    }

    Consistency level(Phase phase) const
    {
        bool ac = (phase == Phase::plain && config_.model == Model::cpac) || phase == Phase::dynamic;
        return ac && config_.ac_after_every_assignment ? Consistency::arc_consistency : Consistency::forward_checking;
    }

    void search(const std::vector<NodeId> & scope, Phase phase, std::uint32_t depth, bool body_just_assigned,
        PartialResult & out)
    {
        visit();

        if (phase == Phase::static_fc && should_switch(scope, body_just_assigned)) {
            if (stats_.phase_switch_depth < 0)
                stats_.phase_switch_depth = static_cast<int>(depth);
            if (!propagate(state_, Consistency::arc_consistency, true))
                return;
            phase = Phase::dynamic;
        }

        if (phase == Phase::dynamic && decompose_) {
            if (auto split = timed_detect(scope)) {
                solve_decomposed(*split, scope, depth, out);
                return;
            }
        }

        auto x = pick(scope, phase);
        if (!x) {
            record_solution(scope, out);
            return;
        }

        const Bitset values = state_.domain(*x);
        for (auto v = values.find_first(); v != Bitset::npos; v = values.find_next(v)) {
            if (config_.search_mode == SearchMode::first && out.count > 0)
                break;
            auto mark = state_.checkpoint();
            if (config_.record_trace)
                stats_.trace.push_back({depth, *x, static_cast<NodeId>(v)});
            if (assign(state_, *x, static_cast<NodeId>(v), level(phase)))
                search(scope, phase, depth + 1, in_body_[*x] != 0, out);
            state_.restore(mark);
        }
    }

private:
    void visit()
    {
        ++stats_.search_nodes;
        if (config_.node_limit && stats_.search_nodes > *config_.node_limit)
            throw SearchInterrupted("node limit reached");
        if (deadline_ && (stats_.search_nodes & 0xfff) == 0 && Clock::now() >= *deadline_)
            throw SearchInterrupted("time limit reached");
    }

    std::optional<DecompositionSplit> timed_detect(const std::vector<NodeId> & scope)
    {
        auto start = Clock::now();
        auto split = detect_decomposition(instance_, state_, scope);
        stats_.decomposition_check_s += std::chrono::duration<double>(Clock::now() - start).count();
        ++stats_.decomposition_checks;
        return split;
    }

    bool should_switch(const std::vector<NodeId> & scope, bool body_just_assigned)
    {
        if (never_switch_)
            return false;
        if (state_.assigned_count() >= cap_)
            return true;
        if (config_.model == Model::dec)
            return false;
        if (std::all_of(body_.begin(), body_.end(), [&](NodeId x) { return state_.is_assigned(x); }))
            return true;
        // A decomposition may already be available before the body is done.
        return body_just_assigned && decompose_ && timed_detect(scope).has_value();
    }

    std::optional<NodeId> pick(const std::vector<NodeId> & scope, Phase phase) const
    {
        switch (phase) {
        case Phase::plain:
            return select_variable(state_, config_.selection_override.value_or(SelectionPolicy::maxcstr), scope);
        case Phase::static_fc:
            if (config_.model != Model::dec)
                if (auto x = select_variable(state_, SelectionPolicy::minsize, body_))
                    return x;
            return select_variable(state_, SelectionPolicy::minsize, scope);
        case Phase::dynamic:
            return select_variable(state_, SelectionPolicy::maxcstr, scope);
        }
        return std::nullopt;
    }

    bool keeps_solutions() const { return config_.search_mode != SearchMode::count_all; }

    void record_solution(const std::vector<NodeId> & scope, PartialResult & out)
    {
        out.count += 1;
        if (keeps_solutions()) {
            Solution s(instance_.variable_count(), no_value);
            for (auto x : scope)
                s[x] = state_.value(x);
            out.solutions.push_back(std::move(s));
        }
    }

    void solve_decomposed(const DecompositionSplit & split, const std::vector<NodeId> & scope, std::uint32_t depth,
        PartialResult & out)
    {
        ++stats_.decomposition_events;
        stats_.used_decomposition = true;

        const bool verify = config_.verify_splits && config_.search_mode == SearchMode::count_all;
        BigCount shadow = 0;
        if (verify) {
            // The shadow solve is bookkeeping; it must not show up in the metrics.
            auto nodes = stats_.search_nodes;
            auto checks = stats_.decomposition_checks;
            auto check_s = stats_.decomposition_check_s;
            auto trace = stats_.trace.size();
            decompose_ = false;
            PartialResult direct;
            search(scope, Phase::dynamic, depth, false, direct);
            decompose_ = true;
            shadow = direct.count;
            stats_.search_nodes = nodes;
            stats_.decomposition_checks = checks;
            stats_.decomposition_check_s = check_s;
            stats_.trace.resize(trace);
        }

        Solution base;
        if (keeps_solutions()) {
            base.assign(instance_.variable_count(), no_value);
            for (auto x : split.shared_assigned)
                base[x] = state_.value(x);
        }
        auto combined = solve_split(
            split,
            [&](std::span<const NodeId> group) {
                PartialResult part;
                search(std::vector<NodeId>(group.begin(), group.end()), Phase::dynamic, depth, false, part);
                return part;
            },
            keeps_solutions(), base);

        if (verify) {
            ++stats_.verified_splits;
            if (shadow != combined.count)
                ++stats_.split_mismatches;
        }
        out.count += combined.count;
        for (auto & s : combined.solutions)
            out.solutions.push_back(std::move(s));
    }

    const SipInstance & instance_;
    const ModelConfig & config_;
    SearchState & state_;
    SolveResult & stats_;
    std::optional<Clock::time_point> deadline_;
    std::size_t cap_ = 0;
    bool decompose_ = false;
    bool never_switch_ = false;
    std::vector<NodeId> body_;
    std::vector<std::uint8_t> in_body_;
};

} // namespace

SolveResult solve(const SipInstance & instance, const ModelConfig & config)
{
    if (!(config.switch_fraction > 0.0 && config.switch_fraction <= 1.0))
        throw std::invalid_argument("switch fraction must lie in (0, 1]");

    const auto start = Clock::now();
    SolveResult result;
    SearchState state(instance, config.degree_prefilter);
    Solver solver(instance, config, state, result);

    UndirectedView pattern(instance.pattern());
    Phase phase = Phase::plain;
    switch (config.model) {
    case Model::cpfc:
    case Model::cpac:
        break;
    case Model::dec:
        phase = Phase::static_fc;
        break;
    case Model::dec_h1:
    case Model::dec_h2: {
        auto h = config.model == Model::dec_h1 ? cycle_heuristic(pattern)
                                               : partition_heuristic(pattern, config.rng_seed);
        result.heuristic_fraction = h.fraction;
        solver.set_body(std::move(h.body_vars));
        phase = Phase::static_fc;
        break;
    }
    }

    PartialResult out;
    bool root_ok = !state.has_empty_domain()
        && propagate(state, config.model == Model::cpac ? Consistency::arc_consistency : Consistency::forward_checking,
            true);
    if (root_ok) {
        try {
            solver.search(all_nodes(instance.variable_count()), phase, 0, false, out);
        }
        catch (const SearchInterrupted &) {
            result.status = SolveStatus::timeout;
        }
    }
    else
        result.search_nodes = 1;

    result.solution_count = std::move(out.count);
    result.solutions = std::move(out.solutions);
    result.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

BigCount count_solutions_subtree(const SipInstance & instance, SearchState & state, std::span<const NodeId> vars,
    const ModelConfig & config)
{
    ModelConfig local = config;
    local.search_mode = SearchMode::count_all;
    local.verify_splits = false;
    local.record_trace = false;
    SolveResult stats;
    Solver solver(instance, local, state, stats);
    PartialResult out;
    solver.search(std::vector<NodeId>(vars.begin(), vars.end()), is_hybrid(config.model) ? Phase::dynamic : Phase::plain,
        0, false, out);
    return out.count;
}

} // namespace sipdec
