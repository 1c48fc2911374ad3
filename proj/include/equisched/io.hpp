#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equisched/instance.hpp"

namespace equisched {

// Instance JSON, day-major:
//   {"clients": n, "days": m, "k": k?, "p": [[p_11, ..., p_1n], ..., [p_m1, ..., p_mn]]}
// Errors carry a JSON pointer to the offending value, e.g. "/p/0: row 0 has 1 entries, expected 2".
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance &inst);

/// Solver output. Schedules are 1-based client indices in the file and 0-based in memory.
struct Solution {
    bool feasible = false;
    Time k = 0;
    std::optional<ScheduleSet> schedules;
    std::vector<Time> per_client_total;
    std::optional<Time> max_total;
};

/// Fills totals from `inst` when a witness is present.
Solution make_solution(const Instance &inst, bool feasible, Time k,
                       const std::optional<ScheduleSet> &witness);

// Solution JSON:
//   {"feasible": b, "k": k, "schedules": [[...], ...], "per_client_total": [...], "max_total": t}
// Without a witness the arrays are empty and max_total is null.
Solution parse_solution(std::string_view text);
std::string serialize_solution(const Solution &sol);

}  // namespace equisched
