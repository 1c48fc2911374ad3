#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "equisched/instance.hpp"

namespace equisched::reductions {

/// Multiset of positive integers with an even sum 2B.
struct PartitionInput {
    std::vector<Time> items;

    Time half() const;  // B
    void validate() const;
};

/// CNF where every clause holds exactly three distinct variables and every variable occurs
/// in exactly four clauses. Literals use DIMACS signs: +v / -v for v in 1..num_vars.
struct Sat34Formula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const;
};

struct BinPackingInput {
    int bins = 0;          // b >= 2
    Time capacity = 0;     // B
    std::vector<Time> sizes;

    /// Sizes above `size_cap` are rejected: the construction assumes unary-scale sizes.
    void validate(Time size_cap = kDefaultSizeCap) const;
    static constexpr Time kDefaultSizeCap = 1'000'000;
};

enum class SourceKind { partition, sat34, bin_packing };
std::string_view to_string(SourceKind kind);

/// Generated instance plus the construction role of every client and day.
struct ReductionOutput {
    Instance instance;
    SourceKind source;
    std::vector<std::string> client_labels;
    std::vector<std::string> day_labels;

    /// {"source": ..., "clients": {label: index}, "days": {label: index}} with 1-based indices.
    std::string labels_json() const;
};

inline constexpr Time kSatEquitability = 37;

/// Variable x: clients x, x^T, x^F and days x_1, x_2 with p(x_1,x)=27, p(x_2,x)=9,
/// p(x_2,x^T)=p(x_2,x^F)=1. Clause c: client c and days c_1, c_2 with p(c_1,c)=29,
/// p(c_2,c)=6 and p(c_2, x^T or x^F)=1 for each literal. Everything else 0.
/// Variables come before clauses in both the client and the day numbering.
ReductionOutput reduce_sat34(const Sat34Formula &f, Time k = kSatEquitability);

/// Four days, clients x, y then one client per element; k = 8B. Optional all-zero days are appended.
ReductionOutput reduce_partition_days(const PartitionInput &p, int extra_zero_days = 0);

/// Two clients, one day per element with p_{i,1} = p_{i,2} = s_i; k = 3B.
/// Optional all-zero clients are appended.
ReductionOutput reduce_partition_clients(const PartitionInput &p, int extra_zero_clients = 0);

/// Per bin x: client x, days x_1, x_2 with p(x_1,x) = B(b^3-b^2-b), p(x_2,x) = B b^2;
/// per item j: p(x_2,j) = s_j on every bin's second day; k = B(b^3-b+1). Bins before items.
ReductionOutput reduce_bin_packing(const BinPackingInput &bp, Time size_cap = BinPackingInput::kDefaultSizeCap);

// Exhaustive source solvers. Throw GuardExceeded above `guard` candidate solutions.
inline constexpr std::uint64_t kSourceGuard = 1ull << 26;
bool solve_partition(const PartitionInput &p, std::uint64_t guard = kSourceGuard);
bool solve_sat34(const Sat34Formula &f, std::uint64_t guard = kSourceGuard);
bool solve_bin_packing(const BinPackingInput &bp, std::uint64_t guard = kSourceGuard);

using SourceInput = std::variant<PartitionInput, Sat34Formula, BinPackingInput>;
bool solve_source(const SourceInput &input, std::uint64_t guard = kSourceGuard);

/// Whitespace-separated positive integers.
PartitionInput parse_partition(std::string_view text);
/// First line "b B", second line the item sizes.
BinPackingInput parse_binpacking(std::string_view text);
/// DIMACS CNF: "c" comment lines, a "p cnf v c" header, clauses as signed ints ending in 0.
Sat34Formula parse_sat34(std::string_view text);

}  // namespace equisched::reductions
