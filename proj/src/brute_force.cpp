#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "equisched/exact.hpp"

namespace equisched {

namespace {

// Depth-first search over (day, position) with branch-and-bound on per-client totals.
// A node places one nonzero job at the next position of the current day; zero-time jobs
// are pinned to the front of every day since moving them there never increases any total.
class ScheduleSearch {
  public:
    ScheduleSearch(const Instance &inst, std::uint64_t guard) : inst_(inst), guard_(guard) {
        const int m = inst.num_days();
        const int n = inst.num_clients();

        day_order_.resize(m);
        std::iota(day_order_.begin(), day_order_.end(), 0);
        std::vector<int> nonzero_count(m);
        for (int day = 0; day < m; ++day) nonzero_count[day] = static_cast<int>((inst.proc().row(day).array() > 0).count());
        // Cheap days first so their fixed contributions tighten the bounds early.
        std::stable_sort(day_order_.begin(), day_order_.end(), [&](int a, int b) {
            if (nonzero_count[a] != nonzero_count[b]) return nonzero_count[a] < nonzero_count[b];
            return inst.proc().row(a).sum() > inst.proc().row(b).sum();
        });

        remaining_after_.assign(m + 1, TimeVector::Zero(n));
        for (int level = m - 1; level >= 0; --level) {
            remaining_after_[level] = remaining_after_[level + 1];
            if (level + 1 < m) remaining_after_[level] += inst.proc().row(day_order_[level + 1]).transpose();
        }
        orders_.resize(m);
        totals_ = TimeVector::Zero(n);
    }

    /// Looks for a schedule set whose max total is < target. In minimize mode the
    /// target tightens after every hit until `floor` is reached or the tree is exhausted.
    bool run(Time target, bool minimize, Time floor) {
        target_ = target;
        minimize_ = minimize;
        floor_ = floor;
        found_ = false;
        stop_ = false;
        enter_day(0);
        return found_;
    }

    Time best() const { return best_; }
    const ScheduleSet &witness() const { return witness_; }
    std::uint64_t nodes() const { return nodes_; }

  private:
    void enter_day(int level) {
        if (level == inst_.num_days()) {
            record();
            return;
        }
        const int day = day_order_[level];
        Permutation &order = orders_[level];
        order.clear();
        std::vector<int> unplaced;
        for (int j = 0; j < inst_.num_clients(); ++j) {
            if (inst_.p(day, j) == 0)
                order.push_back(j);
            else
                unplaced.push_back(j);
        }
        place(level, 0, unplaced);
    }

    void place(int level, Time clock, const std::vector<int> &unplaced) {
        if (unplaced.empty()) {
            enter_day(level + 1);
            return;
        }
        const int day = day_order_[level];
        const TimeVector &rest = remaining_after_[level];

        Time day_end = clock;
        Time best_last = std::numeric_limits<Time>::max();
        for (int u : unplaced) {
            day_end += inst_.p(day, u);
            if (totals_(u) + clock + inst_.p(day, u) + rest(u) >= target_) return;
            best_last = std::min(best_last, totals_(u) + rest(u));
        }
        // Whoever runs last today finishes at day_end.
        if (best_last + day_end >= target_) return;

        std::vector<int> candidates = unplaced;
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return totals_(a) + rest(a) > totals_(b) + rest(b); });

        std::vector<int> next;
        next.reserve(unplaced.size() - 1);
        for (int u : candidates) {
            if (++nodes_ > guard_) {
                throw GuardExceeded("oracle budget exceeded: more than " + std::to_string(guard_) + " nodes");
            }
            const Time completion = clock + inst_.p(day, u);
            if (totals_(u) + completion + rest(u) >= target_) continue;
            next.clear();
            for (int v : unplaced)
                if (v != u) next.push_back(v);
            totals_(u) += completion;
            orders_[level].push_back(u);
            place(level, completion, next);
            orders_[level].pop_back();
            totals_(u) -= completion;
            if (stop_) return;
        }
    }

    void record() {
        const Time worst = totals_.maxCoeff();
        if (worst >= target_) return;
        found_ = true;
        best_ = worst;
        witness_.days.assign(inst_.num_days(), {});
        for (int level = 0; level < inst_.num_days(); ++level) witness_.days[day_order_[level]] = orders_[level];
        target_ = worst;
        if (!minimize_ || worst <= floor_) stop_ = true;
    }

    const Instance &inst_;
    std::uint64_t guard_;
    std::vector<int> day_order_;
    std::vector<TimeVector> remaining_after_;
    std::vector<Permutation> orders_;
    TimeVector totals_;

    Time target_ = 0;
    Time floor_ = 0;
    bool minimize_ = false;
    bool found_ = false;
    bool stop_ = false;
    Time best_ = 0;
    ScheduleSet witness_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

MinKResult brute_force_min_k(const Instance &inst, std::uint64_t node_guard) {
    const Bounds b = bounds(inst);
    ScheduleSearch search(inst, node_guard);
    // Every schedule set has max total <= upper, so the first descent always succeeds.
    search.run(b.upper + 1, /*minimize=*/true, b.lower);
    return {search.best(), search.witness(), search.nodes()};
}

DecisionResult brute_force_decide(const Instance &inst, Time k, std::uint64_t node_guard) {
    DecisionResult result;
    result.algorithm = Algorithm::brute;
    const Bounds b = bounds(inst);
    if (k < b.lower) return result;
    if (k >= b.upper) {
        result.feasible = true;
        result.witness = default_schedule(inst);
        return result;
    }
    ScheduleSearch search(inst, node_guard);
    result.feasible = search.run(k + 1, /*minimize=*/false, 0);
    if (result.feasible) result.witness = search.witness();
    result.work = search.nodes();
    return result;
}

}  // namespace equisched
