#include "equisched/instance.hpp"

#include <algorithm>
#include <string>

namespace equisched {

Instance::Instance(TimeMatrix proc, std::optional<Time> k) : proc_(std::move(proc)), k_(k) {
    if (proc_.rows() < 1) throw ValidationError("instance needs at least one day");
    if (proc_.cols() < 1) throw ValidationError("instance needs at least one client");
    if (k_ && *k_ < 0) throw ValidationError("k must be non-negative, got " + std::to_string(*k_));
    for (Eigen::Index i = 0; i < proc_.rows(); ++i) {
        for (Eigen::Index j = 0; j < proc_.cols(); ++j) {
            const Time p = proc_(i, j);
            if (p < 0) {
                throw ValidationError("negative processing time " + std::to_string(p) + " at day " +
                                      std::to_string(i + 1) + ", client " + std::to_string(j + 1));
            }
            if (p > kMaxTotalTime - total_) {
                throw ValidationError("total processing time exceeds the representable range");
            }
            total_ += p;
        }
    }
}

Time Instance::require_k() const {
    if (!k_) throw InapplicableError("instance has no equitability parameter k");
    return *k_;
}

Instance Instance::with_k(std::optional<Time> k) const {
    Instance copy = *this;
    if (k && *k < 0) throw ValidationError("k must be non-negative, got " + std::to_string(*k));
    copy.k_ = k;
    return copy;
}

bool operator==(const Instance &a, const Instance &b) {
    return a.k_ == b.k_ && a.proc_.rows() == b.proc_.rows() && a.proc_.cols() == b.proc_.cols() &&
           a.proc_ == b.proc_;
}

void ScheduleSet::validate(int num_clients, int num_days) const {
    if (static_cast<int>(days.size()) != num_days) {
        throw ValidationError("schedule set has " + std::to_string(days.size()) + " days, expected " +
                              std::to_string(num_days));
    }
    std::vector<char> seen(num_clients);
    for (std::size_t day = 0; day < days.size(); ++day) {
        const Permutation &perm = days[day];
        const std::string where = "day " + std::to_string(day + 1) + ": ";
        if (static_cast<int>(perm.size()) != num_clients) {
            throw ValidationError(where + "schedule has " + std::to_string(perm.size()) +
                                  " entries, expected " + std::to_string(num_clients));
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int client : perm) {
            if (client < 0 || client >= num_clients) {
                throw ValidationError(where + "client " + std::to_string(client + 1) + " out of range");
            }
            if (seen[client]) {
                throw ValidationError(where + "client " + std::to_string(client + 1) +
                                      " appears more than once");
            }
            seen[client] = 1;
        }
    }
}

CompletionReport evaluate(const Instance &inst, const ScheduleSet &sched) {
    sched.validate(inst.num_clients(), inst.num_days());
    CompletionReport report;
    report.per_day.resize(inst.num_days(), inst.num_clients());
    for (int day = 0; day < inst.num_days(); ++day) {
        report.per_day.row(day) = day_completion(inst.proc().row(day), sched.days[day]).transpose();
    }
    report.per_client = report.per_day.colwise().sum().transpose();
    report.max_total = report.per_client.maxCoeff();
    return report;
}

bool is_equitable(const Instance &inst, const ScheduleSet &sched) {
    const Time k = inst.require_k();
    return evaluate(inst, sched).max_total <= k;
}

Bounds bounds(const Instance &inst) {
    return {inst.proc().colwise().sum().maxCoeff(), inst.total()};
}

ScheduleSet default_schedule(const Instance &inst) {
    ScheduleSet sched;
    sched.days.reserve(inst.num_days());
    for (int day = 0; day < inst.num_days(); ++day) {
        Permutation perm;
        perm.reserve(inst.num_clients());
        for (int j = 0; j < inst.num_clients(); ++j)
            if (inst.p(day, j) == 0) perm.push_back(j);
        for (int j = 0; j < inst.num_clients(); ++j)
            if (inst.p(day, j) != 0) perm.push_back(j);
        sched.days.push_back(std::move(perm));
    }
    return sched;
}

}  // namespace equisched
