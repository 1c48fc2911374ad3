#include <algorithm>

#include "equisched/exact.hpp"

namespace equisched {

std::vector<ClientType> classify_clients(const Instance &inst) {
    if (inst.num_days() != 2) throw InapplicableError("two_day requires m=2");
    std::vector<ClientType> types(inst.num_clients());
    for (int j = 0; j < inst.num_clients(); ++j)
        types[j] = inst.p(0, j) <= inst.p(1, j) ? ClientType::type_one : ClientType::type_two;
    return types;
}

ScheduleSet two_day_schedule(const Instance &inst) {
    const std::vector<ClientType> types = classify_clients(inst);

    Permutation first, second;
    for (int j = 0; j < inst.num_clients(); ++j)
        (types[j] == ClientType::type_one ? first : second).push_back(j);

    std::stable_sort(first.begin(), first.end(), [&](int a, int b) { return inst.p(0, a) < inst.p(0, b); });
    std::stable_sort(second.begin(), second.end(), [&](int a, int b) { return inst.p(1, a) > inst.p(1, b); });

    Permutation day1 = std::move(first);
    day1.insert(day1.end(), second.begin(), second.end());
    Permutation day2(day1.rbegin(), day1.rend());
    return ScheduleSet{{std::move(day1), std::move(day2)}};
}

}  // namespace equisched
