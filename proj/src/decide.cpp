#include <array>
#include <cmath>
#include <string>

#include "equisched/exact.hpp"
#include "equisched/formulations.hpp"

namespace equisched {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kNames{{
    {Algorithm::automatic, "auto"},
    {Algorithm::brute, "brute"},
    {Algorithm::two_day, "two_day"},
    {Algorithm::dp, "dp"},
    {Algorithm::nfold, "nfold"},
    {Algorithm::category, "category"},
}};

// Systems larger than this are not worth handing to the generic IP search in auto mode.
constexpr double kAutoNFoldVariables = 5000;

DecisionResult from_ip(const ip::SolveResult &solved, Algorithm algo) {
    if (solved.status == ip::Status::guard_exceeded) {
        throw GuardExceeded(std::string(to_string(algo)) + ": integer search exceeded its node guard after " +
                            std::to_string(solved.nodes) + " nodes");
    }
    DecisionResult result;
    result.algorithm = algo;
    result.feasible = solved.status == ip::Status::feasible;
    result.work = solved.nodes;
    return result;
}

DecisionResult decide_with(const Instance &inst, Algorithm algo, const Guards &guards) {
    const Time k = inst.require_k();
    switch (algo) {
        case Algorithm::brute:
            return brute_force_decide(inst, k, guards.brute_nodes);
        case Algorithm::two_day: {
            DecisionResult result;
            result.algorithm = algo;
            ScheduleSet sched = two_day_schedule(inst);
            result.feasible = evaluate(inst, sched).max_total <= k;
            if (result.feasible) result.witness = std::move(sched);
            result.work = static_cast<std::uint64_t>(inst.num_clients());
            return result;
        }
        case Algorithm::dp: {
            DpResult dp = dp_min_k(inst, k, guards.dp_states);
            return {dp.feasible, std::move(dp.witness), algo, dp.states};
        }
        case Algorithm::nfold: {
            const NFoldModel model = build_nfold(inst);
            const ip::SolveResult solved = ip::solve_feasibility(model.system, guards.ip_nodes);
            DecisionResult result = from_ip(solved, algo);
            if (result.feasible) result.witness = nfold_witness(inst, *solved.assignment);
            return result;
        }
        case Algorithm::category: {
            const CategoryIlp ilp = build_category_ilp(inst);
            const ip::SolveResult solved = ip::solve_feasibility(ilp.system, guards.ip_nodes);
            DecisionResult result = from_ip(solved, algo);
            if (result.feasible) result.witness = category_witness(inst, ilp.model, *solved.assignment);
            return result;
        }
        case Algorithm::automatic:
            break;
    }
    throw InapplicableError("algorithm must be resolved before dispatch");
}

}  // namespace

std::string_view to_string(Algorithm algo) {
    for (const auto &[a, name] : kNames)
        if (a == algo) return name;
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (const auto &[a, spelled] : kNames)
        if (spelled == name) return a;
    return std::nullopt;
}

Algorithm select_algorithm(const Instance &inst, const Guards &guards) {
    const Time k = inst.require_k();
    if (inst.num_days() == 2) return Algorithm::two_day;
    // Reachable DP states are bounded by (k+1)^n; the n-fold system has 2nm(k+1) variables.
    const double dp_states = std::pow(static_cast<double>(k) + 1.0, inst.num_clients());
    if (dp_states <= static_cast<double>(guards.dp_states)) return Algorithm::dp;
    const double nfold_vars = 2.0 * inst.num_clients() * inst.num_days() * (static_cast<double>(k) + 1.0);
    if (nfold_vars <= kAutoNFoldVariables) return Algorithm::nfold;
    return Algorithm::brute;
}

DecisionResult decide(const Instance &inst, Algorithm algo, const Guards &guards) {
    inst.require_k();
    if (algo == Algorithm::two_day && inst.num_days() != 2) throw InapplicableError("two_day requires m=2");
    if (algo != Algorithm::automatic) return decide_with(inst, algo, guards);

    const Algorithm chosen = select_algorithm(inst, guards);
    try {
        return decide_with(inst, chosen, guards);
    } catch (const GuardExceeded &) {
        if (chosen == Algorithm::brute) throw;
        return decide_with(inst, Algorithm::brute, guards);
    }
}

MinimizeResult minimize_k(const Instance &inst, Algorithm algo, const Guards &guards) {
    if (algo == Algorithm::two_day && inst.num_days() != 2) throw InapplicableError("two_day requires m=2");
    const Bounds b = bounds(inst);
    const Instance probe = inst.with_k(b.upper);
    const Algorithm chosen = algo == Algorithm::automatic ? select_algorithm(probe, guards) : algo;

    MinimizeResult result;
    result.algorithm = chosen;
    // Any schedule set meets the upper bound.
    result.witness = default_schedule(inst);
    result.min_k = b.upper;
    if (b.lower == b.upper) return result;

    if (chosen == Algorithm::brute) {
        MinKResult found = brute_force_min_k(inst, guards.brute_nodes);
        result.min_k = found.min_k;
        result.witness = std::move(found.witness);
        result.work = found.nodes;
        return result;
    }

    Time lo = b.lower, hi = b.upper;
    while (lo < hi) {
        const Time mid = lo + (hi - lo) / 2;
        DecisionResult probe_result = decide(inst.with_k(mid), chosen, guards);
        ++result.decide_calls;
        result.work += probe_result.work;
        if (probe_result.feasible) {
            hi = mid;
            if (probe_result.witness) result.witness = std::move(*probe_result.witness);
        } else {
            lo = mid + 1;
        }
    }
    result.min_k = hi;
    return result;
}

}  // namespace equisched
