#include "equisched/formulations.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

namespace equisched {

using ip::Integer;
using ip::Relation;
using ip::Term;

namespace {

std::string slot_name(char kind, int client, int day, Integer c) {
    return std::string(1, kind) + "[" + std::to_string(client + 1) + "][" + std::to_string(day + 1) + "][" +
           std::to_string(c) + "]";
}

std::string perm_label(const Permutation &perm) {
    std::string s;
    for (std::size_t pos = 0; pos < perm.size(); ++pos) s += (pos ? "," : "") + std::to_string(perm[pos] + 1);
    return s;
}

}  // namespace

int nfold_x_index(int m, Integer k, int client, int day, Integer c) {
    const Integer slots = k + 1;
    return static_cast<int>(client * 2 * m * slots + day * slots + c);
}

int nfold_y_index(int m, Integer k, int client, int day, Integer c) {
    const Integer slots = k + 1;
    return static_cast<int>(client * 2 * m * slots + m * slots + day * slots + c);
}

NFoldModel build_nfold(const Instance &inst, const NFoldOptions &options) {
    const Integer k = inst.require_k();
    const int n = inst.num_clients();
    const int m = inst.num_days();
    const Integer slots = k + 1;

    if (static_cast<double>(n) * 2.0 * m * static_cast<double>(slots) > static_cast<double>(options.variable_guard)) {
        throw GuardExceeded("n-fold system would need more than " + std::to_string(options.variable_guard) +
                            " variables");
    }

    NFoldModel model;
    ip::ConstraintSystem &sys = model.system;

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            for (Integer c = 0; c <= k; ++c) {
                const bool pinned = options.restrict_completion_range && c < inst.p(i, j);
                sys.add_variable(slot_name('x', j, i, c), 0, pinned ? 0 : 1);
            }
        }
        for (int i = 0; i < m; ++i)
            for (Integer c = 0; c <= k; ++c) sys.add_variable(slot_name('y', j, i, c), 0, inst.p(i, j));
    }

    for (int j = 0; j < n; ++j) {
        auto x = [&](int i, Integer c) { return nfold_x_index(m, k, j, i, c); };
        auto y = [&](int i, Integer c) { return nfold_y_index(m, k, j, i, c); };
        for (int i = 0; i < m; ++i) {
            std::vector<Term> row;
            for (Integer c = 0; c <= k; ++c) row.push_back({x(i, c), 1});
            sys.add_constraint(std::move(row), Relation::equal, 1, "local-1");
        }
        {
            std::vector<Term> row;
            for (int i = 0; i < m; ++i)
                for (Integer c = 0; c <= k; ++c) row.push_back({x(i, c), c});
            sys.add_constraint(std::move(row), Relation::less_equal, k, "local-2");
        }
        for (int i = 0; i < m; ++i) {
            std::vector<Term> row;
            for (Integer c = 0; c <= k; ++c) row.push_back({y(i, c), 1});
            sys.add_constraint(std::move(row), Relation::equal, inst.p(i, j), "local-3");
        }
        for (int i = 0; i < m; ++i)
            for (Integer c = 0; c <= k; ++c)
                sys.add_constraint({{y(i, c), 1}, {x(i, c), -c}}, Relation::less_equal, 0, "local-4");
    }

    for (int i = 0; i < m; ++i) {
        for (Integer c = 0; c <= k; ++c) {
            std::vector<Term> row;
            for (int j = 0; j < n; ++j)
                for (Integer prior = 0; prior <= c; ++prior) row.push_back({nfold_y_index(m, k, j, i, prior), 1});
            sys.add_constraint(std::move(row), Relation::less_equal, c, "global");
        }
    }

    model.meta.s = static_cast<int>(2 * m * slots);
    model.meta.ell1 = static_cast<int>(m * slots);
    model.meta.ell2 = static_cast<int>(m + 1 + m + m * slots);
    model.meta.a_max = std::max<Integer>(1, k);
    model.meta.brick_count = n;
    return model;
}

ScheduleSet nfold_witness(const Instance &inst, const ip::Assignment &a) {
    const Integer k = inst.require_k();
    const int n = inst.num_clients();
    const int m = inst.num_days();
    const std::size_t expected = static_cast<std::size_t>(n) * 2 * m * (k + 1);
    if (a.values.size() != expected) {
        throw ValidationError("assignment has " + std::to_string(a.values.size()) + " values, expected " +
                              std::to_string(expected));
    }
    ScheduleSet sched;
    for (int i = 0; i < m; ++i) {
        std::vector<Integer> slot(n, -1);
        for (int j = 0; j < n; ++j) {
            for (Integer c = 0; c <= k; ++c) {
                if (a[nfold_x_index(m, k, j, i, c)] != 1) continue;
                if (slot[j] != -1) {
                    throw ValidationError("client " + std::to_string(j + 1) + " has several completion slots on day " +
                                          std::to_string(i + 1));
                }
                slot[j] = c;
            }
            if (slot[j] == -1) {
                throw ValidationError("client " + std::to_string(j + 1) + " has no completion slot on day " +
                                      std::to_string(i + 1));
            }
        }
        Permutation order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) { return slot[lhs] < slot[rhs]; });
        sched.days.push_back(std::move(order));
    }
    return sched;
}

std::string NFoldMeta::to_json() const {
    nlohmann::ordered_json doc{{"s", s}, {"ell1", ell1}, {"ell2", ell2}, {"a_max", a_max}, {"brick_count", brick_count}};
    return doc.dump() + "\n";
}

CategoryIlp build_category_ilp(const Instance &inst, int client_guard) {
    const Integer k = inst.require_k();
    const int n = inst.num_clients();
    const int m = inst.num_days();
    if (n > client_guard) {
        throw GuardExceeded("category ILP enumerates n! orders; n=" + std::to_string(n) + " exceeds guard " +
                            std::to_string(client_guard));
    }

    CategoryIlp ilp;
    CategoryModel &model = ilp.model;
    std::map<std::vector<Time>, int> index;
    for (int i = 0; i < m; ++i) {
        std::vector<Time> profile(inst.proc().row(i).begin(), inst.proc().row(i).end());
        const auto [it, inserted] = index.emplace(profile, static_cast<int>(model.categories.size()));
        if (inserted) {
            model.categories.push_back(std::move(profile));
            model.multiplicity.push_back(0);
        }
        ++model.multiplicity[it->second];
        model.day_category.push_back(it->second);
    }

    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do model.perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    model.completion.resize(model.categories.size());
    for (std::size_t c = 0; c < model.categories.size(); ++c) {
        const Eigen::Map<const TimeVector> profile(model.categories[c].data(), n);
        for (const Permutation &order : model.perms) model.completion[c].push_back(day_completion(profile, order));
    }

    ip::ConstraintSystem &sys = ilp.system;
    for (std::size_t c = 0; c < model.categories.size(); ++c) {
        for (const Permutation &order : model.perms) {
            sys.add_variable("x[c" + std::to_string(c + 1) + "][" + perm_label(order) + "]", 0, model.multiplicity[c]);
        }
    }
    const int num_cats = static_cast<int>(model.categories.size());
    const int num_perms = static_cast<int>(model.perms.size());
    for (int c = 0; c < num_cats; ++c) {
        std::vector<Term> row;
        for (int s = 0; s < num_perms; ++s) row.push_back({model.variable_index(c, s), 1});
        sys.add_constraint(std::move(row), Relation::equal, model.multiplicity[c], "count");
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Term> row;
        for (int c = 0; c < num_cats; ++c)
            for (int s = 0; s < num_perms; ++s) row.push_back({model.variable_index(c, s), model.completion[c][s](j)});
        sys.add_constraint(std::move(row), Relation::less_equal, k, "budget");
    }
    return ilp;
}

ScheduleSet category_witness(const Instance &inst, const CategoryModel &model, const ip::Assignment &a) {
    const int num_cats = static_cast<int>(model.categories.size());
    const int num_perms = static_cast<int>(model.perms.size());
    if (static_cast<int>(a.values.size()) != num_cats * num_perms) {
        throw ValidationError("assignment does not match the category model");
    }
    ScheduleSet sched;
    sched.days.resize(inst.num_days());
    for (int c = 0; c < num_cats; ++c) {
        std::vector<int> days;
        for (int i = 0; i < inst.num_days(); ++i)
            if (model.day_category[i] == c) days.push_back(i);
        std::size_t next_day = 0;
        for (int s = 0; s < num_perms; ++s) {
            const Integer uses = a[model.variable_index(c, s)];
            if (uses < 0) throw ValidationError("negative multiplicity in category " + std::to_string(c + 1));
            for (Integer u = 0; u < uses; ++u) {
                if (next_day == days.size()) {
                    throw ValidationError("multiplicities of category " + std::to_string(c + 1) + " exceed m_c=" +
                                          std::to_string(days.size()));
                }
                sched.days[days[next_day++]] = model.perms[s];
            }
        }
        if (next_day != days.size()) {
            throw ValidationError("multiplicities of category " + std::to_string(c + 1) + " sum to " +
                                  std::to_string(next_day) + ", expected m_c=" + std::to_string(days.size()));
        }
    }
    return sched;
}

std::string CategoryModel::to_json() const {
    nlohmann::ordered_json doc;
    auto &cats = doc["categories"] = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < categories.size(); ++c)
        cats.push_back({{"profile", categories[c]}, {"multiplicity", multiplicity[c]}});
    doc["day_category"] = day_category;
    doc["permutations"] = perms.size();
    return doc.dump() + "\n";
}

}  // namespace equisched
