#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equisched/instance.hpp"
#include "equisched/ip_engine.hpp"

namespace equisched {

// n-fold formulation. One brick per client j holding x^{(j)}_{i,c} in {0,1} (client j
// completes at time c on day i) and y^{(j)}_{i,c} in {0..p_{i,j}}, for day i and c in 0..k.
// Local rows per brick:
//   (1) for all i:   sum_c x_{i,c} = 1
//   (2)              sum_{i,c} c * x_{i,c} <= k
//   (3) for all i:   sum_c y_{i,c} = p_{i,j}
//   (4) for all i,c: y_{i,c} - c * x_{i,c} <= 0
// Global rows: for all i,c: sum_{j, c' <= c} y^{(j)}_{i,c'} <= c.

struct NFoldMeta {
    int s = 0;        // columns per brick, 2 m (k+1)
    int ell1 = 0;     // global rows, m (k+1)
    int ell2 = 0;     // local rows per brick, m + 1 + m + m (k+1)
    ip::Integer a_max = 0;  // largest absolute coefficient
    int brick_count = 0;    // n

    std::string to_json() const;
};

struct NFoldOptions {
    /// Pins x_{i,c} = 0 for c < p_{i,j}. Off by default.
    bool restrict_completion_range = false;
    std::uint64_t variable_guard = 2'000'000;
};

struct NFoldModel {
    ip::ConstraintSystem system;
    NFoldMeta meta;
};

NFoldModel build_nfold(const Instance &inst, const NFoldOptions &options = {});

/// Index of x^{(j)}_{i,c} / y^{(j)}_{i,c} in a system built for (m, k); all indices 0-based.
int nfold_x_index(int m, ip::Integer k, int client, int day, ip::Integer c);
int nfold_y_index(int m, ip::Integer k, int client, int day, ip::Integer c);

/// Orders each day by the completion slot c_{i,j} chosen in the assignment, ties by client index.
ScheduleSet nfold_witness(const Instance &inst, const ip::Assignment &a);

// Category ILP. Days with identical processing-time vectors form a category c with
// multiplicity m_c; x_{c,sigma} counts the days of category c run in order sigma.
//   for all c: sum_sigma x_{c,sigma} = m_c
//   for all j: sum_{c,sigma} C_{c,j}(sigma) x_{c,sigma} <= k

struct CategoryModel {
    std::vector<std::vector<Time>> categories;    // distinct day profiles, by first occurrence
    std::vector<int> multiplicity;                // m_c
    std::vector<int> day_category;                // category of each day
    std::vector<Permutation> perms;               // all n! orders, lexicographic
    std::vector<std::vector<TimeVector>> completion;  // [category][perm] -> C_{c,.}(sigma)

    int variable_index(int category, int perm) const {
        return category * static_cast<int>(perms.size()) + perm;
    }
    std::string to_json() const;
};

struct CategoryIlp {
    ip::ConstraintSystem system;
    CategoryModel model;
};

inline constexpr int kCategoryClientGuard = 8;

CategoryIlp build_category_ilp(const Instance &inst, int client_guard = kCategoryClientGuard);

/// Hands out orders to the days of each category in ascending day order, consuming the
/// permutations lexicographically, each x_{c,sigma} times.
ScheduleSet category_witness(const Instance &inst, const CategoryModel &model, const ip::Assignment &a);

}  // namespace equisched
