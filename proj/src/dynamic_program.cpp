#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "equisched/exact.hpp"

namespace equisched {

namespace {

using Budget = std::vector<Time>;

struct BudgetHash {
    std::size_t operator()(const Budget &b) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Time v : b) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
        return h;
    }
};

struct Node {
    Budget budget;
    int parent = -1;
    int option = -1;
};

// Layers above this size skip the quadratic dominance filter.
constexpr std::size_t kDominanceLimit = 20000;

bool dominates(const Budget &v, const Budget &u) {
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] < u[j]) return false;
    return true;
}

std::vector<Node> drop_dominated(std::vector<Node> layer) {
    if (layer.size() > kDominanceLimit) return layer;
    auto sum = [](const Budget &b) { return std::accumulate(b.begin(), b.end(), Time{0}); };
    std::stable_sort(layer.begin(), layer.end(),
                     [&](const Node &a, const Node &b) { return sum(a.budget) > sum(b.budget); });
    std::vector<Node> kept;
    for (Node &node : layer) {
        const bool dominated = std::any_of(kept.begin(), kept.end(),
                                           [&](const Node &k) { return dominates(k.budget, node.budget); });
        if (!dominated) kept.push_back(std::move(node));
    }
    return kept;
}

}  // namespace

std::vector<DayOption> distinct_day_options(const Instance &inst, int day, std::uint64_t limit) {
    Permutation zeros, movable;
    for (int j = 0; j < inst.num_clients(); ++j) (inst.p(day, j) == 0 ? zeros : movable).push_back(j);

    std::map<std::vector<Time>, Permutation> seen;
    std::vector<DayOption> options;
    std::uint64_t visited = 0;
    do {
        if (++visited > limit) {
            throw GuardExceeded("day " + std::to_string(day + 1) + " has too many processing orders (limit " +
                                std::to_string(limit) + ")");
        }
        Permutation order = zeros;
        order.insert(order.end(), movable.begin(), movable.end());
        TimeVector completion = day_completion(inst.proc().row(day), order);
        std::vector<Time> key(completion.begin(), completion.end());
        if (seen.emplace(std::move(key), order).second) options.push_back({std::move(completion), std::move(order)});
    } while (std::next_permutation(movable.begin(), movable.end()));
    return options;
}

DpResult dp_min_k(const Instance &inst, Time k_cap, std::uint64_t state_guard) {
    const int n = inst.num_clients();
    const int m = inst.num_days();
    DpResult result;
    if (k_cap < 0) return result;

    std::vector<std::vector<DayOption>> options(m);
    for (int day = 0; day < m; ++day) options[day] = distinct_day_options(inst, day, state_guard);

    // layers[i] holds the budgets still available after scheduling days 0..i-1.
    // A budget that would drop below zero is T's -1 entry and is never stored.
    std::vector<std::vector<Node>> layers(m + 1);
    layers[0].push_back({Budget(n, k_cap), -1, -1});
    result.states = 1;

    for (int day = 0; day < m; ++day) {
        std::unordered_map<Budget, int, BudgetHash> index;
        std::vector<Node> next;
        const std::vector<Node> &current = layers[day];
        for (int s = 0; s < static_cast<int>(current.size()); ++s) {
            for (int o = 0; o < static_cast<int>(options[day].size()); ++o) {
                const TimeVector &completion = options[day][o].completion;
                Budget budget = current[s].budget;
                bool alive = true;
                for (int j = 0; j < n && alive; ++j) {
                    budget[j] -= completion(j);
                    alive = budget[j] >= 0;
                }
                if (!alive) continue;
                if (index.emplace(budget, static_cast<int>(next.size())).second) {
                    next.push_back({std::move(budget), s, o});
                    if (++result.states > state_guard) {
                        throw GuardExceeded("dynamic program exceeded " + std::to_string(state_guard) + " states");
                    }
                }
            }
        }
        layers[day + 1] = drop_dominated(std::move(next));
        if (layers[day + 1].empty()) return result;
    }

    result.feasible = true;
    ScheduleSet witness;
    witness.days.resize(m);
    int at = 0;
    for (int day = m; day > 0; --day) {
        const Node &node = layers[day][at];
        witness.days[day - 1] = options[day - 1][node.option].order;
        at = node.parent;
    }
    result.witness = std::move(witness);
    return result;
}

}  // namespace equisched
