#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "equisched/instance.hpp"

namespace equisched {

enum class Algorithm { automatic, brute, two_day, dp, nfold, category };

std::string_view to_string(Algorithm algo);
/// Accepts the CLI spellings: auto, brute, two_day, dp, nfold, category.
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Resource budgets. Exhausting any of them raises GuardExceeded.
struct Guards {
    std::uint64_t brute_nodes = 100'000'000;
    std::uint64_t ip_nodes = 10'000'000;
    std::uint64_t dp_states = 10'000'000;
};

struct MinKResult {
    Time min_k = 0;
    ScheduleSet witness;
    std::uint64_t nodes = 0;
};

struct DecisionResult {
    bool feasible = false;
    std::optional<ScheduleSet> witness;
    Algorithm algorithm = Algorithm::automatic;
    std::uint64_t work = 0;  // nodes or states explored
};

// Brute-force oracle. Depth-first over every day's processing order with zero-time jobs
// pinned to the front, pruned on partial per-client totals. Exact; throws GuardExceeded
// ("oracle budget exceeded") instead of returning an unproven answer.
MinKResult brute_force_min_k(const Instance &inst, std::uint64_t node_guard = Guards{}.brute_nodes);
DecisionResult brute_force_decide(const Instance &inst, Time k, std::uint64_t node_guard = Guards{}.brute_nodes);

enum class ClientType { type_one, type_two };

/// type_one iff p_{1,j} <= p_{2,j}. Requires m = 2.
std::vector<ClientType> classify_clients(const Instance &inst);

/// Optimal schedule pair for two days: day 1 runs type-one clients by non-decreasing p_{1,j},
/// then type-two clients by non-increasing p_{2,j} (ties by client index); day 2 is the reverse.
ScheduleSet two_day_schedule(const Instance &inst);

struct DpResult {
    bool feasible = false;
    std::optional<ScheduleSet> witness;
    std::uint64_t states = 0;
};

/// Layered reachability over clamped per-client budget vectors, starting at (k_cap, ..., k_cap).
DpResult dp_min_k(const Instance &inst, Time k_cap, std::uint64_t state_guard = Guards{}.dp_states);

/// Distinct completion vectors of one day with zero-time jobs first; each paired with the
/// lexicographically first order producing it.
struct DayOption {
    TimeVector completion;
    Permutation order;
};
std::vector<DayOption> distinct_day_options(const Instance &inst, int day, std::uint64_t limit);

/// Resolves Algorithm::automatic for this instance (k must be present).
Algorithm select_algorithm(const Instance &inst, const Guards &guards = {});

DecisionResult decide(const Instance &inst, Algorithm algo, const Guards &guards = {});

struct MinimizeResult {
    Time min_k = 0;
    ScheduleSet witness;
    Algorithm algorithm = Algorithm::automatic;
    std::uint64_t work = 0;
    int decide_calls = 0;
};

/// Binary search over [bounds.lower, bounds.upper] with one decision algorithm chosen up front.
/// The brute-force selector searches for the minimum directly.
MinimizeResult minimize_k(const Instance &inst, Algorithm algo, const Guards &guards = {});

}  // namespace equisched
