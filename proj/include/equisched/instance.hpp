#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace equisched {

/// Abstract time units. All processing and completion times are exact integers.
using Time = std::int64_t;

/// Day-major matrix: row i is day i, column j is client j.
using TimeMatrix = Eigen::Matrix<Time, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using TimeVector = Eigen::Matrix<Time, Eigen::Dynamic, 1>;

/// Processing order of one day, as 0-based client indices.
using Permutation = std::vector<int>;

/// Instances whose total processing time exceeds this are rejected so that every
/// completion-time sum (and k + 1 during searches) stays representable.
inline constexpr Time kMaxTotalTime = Time{1} << 60;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-permutations, negative values, parse errors.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A search exhausted its node or state budget. Never reported as "infeasible".
class GuardExceeded : public Error {
  public:
    using Error::Error;
};

/// The requested operation does not apply to this input (e.g. two_day with m != 2, missing k).
class InapplicableError : public Error {
  public:
    using Error::Error;
};

class Instance {
  public:
    explicit Instance(TimeMatrix proc, std::optional<Time> k = std::nullopt);

    int num_clients() const { return static_cast<int>(proc_.cols()); }
    int num_days() const { return static_cast<int>(proc_.rows()); }
    const TimeMatrix &proc() const { return proc_; }
    Time p(int day, int client) const { return proc_(day, client); }

    const std::optional<Time> &k() const { return k_; }
    /// Throws InapplicableError when the instance carries no k.
    Time require_k() const;
    Instance with_k(std::optional<Time> k) const;

    /// Sum of all processing times.
    Time total() const { return total_; }

    friend bool operator==(const Instance &a, const Instance &b);

  private:
    TimeMatrix proc_;
    std::optional<Time> k_;
    Time total_ = 0;
};

/// One permutation per day. The witness object for k-equitability.
struct ScheduleSet {
    std::vector<Permutation> days;

    /// Throws ValidationError naming the first offending day.
    void validate(int num_clients, int num_days) const;

    friend bool operator==(const ScheduleSet &, const ScheduleSet &) = default;
};

struct CompletionReport {
    TimeMatrix per_day;     // C_{i,j}
    TimeVector per_client;  // C_j
    Time max_total = 0;
};

/// Completion time of every client for a single day processed in `order`.
/// Result is indexed by client, not by position.
template <typename Derived>
TimeVector day_completion(const Eigen::MatrixBase<Derived> &day_proc, std::span<const int> order) {
    TimeVector completion(day_proc.size());
    Time clock = 0;
    for (int client : order) {
        clock += day_proc(client);
        completion(client) = clock;
    }
    return completion;
}

CompletionReport evaluate(const Instance &inst, const ScheduleSet &sched);

bool is_equitable(const Instance &inst, const ScheduleSet &sched);

struct Bounds {
    Time lower = 0;
    Time upper = 0;
};

/// lower = max_j sum_i p_{i,j}, upper = sum_{i,j} p_{i,j}.
Bounds bounds(const Instance &inst);

/// Zero-time jobs first, then the rest, both in client index order.
ScheduleSet default_schedule(const Instance &inst);

}  // namespace equisched
