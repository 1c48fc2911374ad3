#include <doctest.h>

#include <random>
#include <set>

#include "equisched/exact.hpp"
#include "equisched/formulations.hpp"
#include "oracle.hpp"

using namespace equisched;

namespace {

Instance make(std::initializer_list<std::initializer_list<Time>> rows, std::optional<Time> k = std::nullopt) {
    TimeMatrix proc(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto &row : rows) {
        int j = 0;
        for (Time v : row) proc(i, j++) = v;
        ++i;
    }
    return Instance(proc, k);
}

int count_tag(const ip::ConstraintSystem &sys, const std::string &tag) {
    int count = 0;
    for (const auto &c : sys.constraints()) count += c.tag == tag;
    return count;
}

// x = 1 exactly at the given slot per (client, day); y puts p on that slot.
ip::Assignment slot_assignment(const Instance &inst, const std::vector<std::vector<int>> &slot) {
    const Time k = inst.require_k();
    const int n = inst.num_clients(), m = inst.num_days();
    ip::Assignment a{std::vector<ip::Integer>(static_cast<std::size_t>(2 * n * m * (k + 1)), 0)};
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            a.values[nfold_x_index(m, k, j, i, slot[i][j])] = 1;
            a.values[nfold_y_index(m, k, j, i, slot[i][j])] = inst.p(i, j);
        }
    return a;
}

}  // namespace

TEST_CASE("n-fold: counts for the two-client example") {
    const NFoldModel model = build_nfold(make({{1, 1}}, 3));
    CHECK(model.system.num_variables() == 16);
    const int local = count_tag(model.system, "local-1") + count_tag(model.system, "local-2") +
                      count_tag(model.system, "local-3") + count_tag(model.system, "local-4");
    CHECK(local == 14);
    CHECK(count_tag(model.system, "global") == 4);
    CHECK(model.meta.s == 8);
    CHECK(model.meta.ell1 == 4);
    CHECK(model.meta.ell2 == 7);
    CHECK(model.meta.brick_count == 2);
    CHECK(model.meta.a_max == 3);
    CHECK(model.meta.to_json() == "{\"s\":8,\"ell1\":4,\"ell2\":7,\"a_max\":3,\"brick_count\":2}\n");

    CHECK(model.system.variables()[nfold_x_index(1, 3, 1, 0, 2)].name == "x[2][1][2]");
    CHECK(model.system.variables()[nfold_y_index(1, 3, 0, 0, 3)].name == "y[1][1][3]");
    CHECK(model.system.variables()[nfold_y_index(1, 3, 0, 0, 3)].upper == 1);
}

TEST_CASE("n-fold: oversized job makes the system infeasible") {
    const NFoldModel model = build_nfold(make({{5}}, 3));
    CHECK(ip::solve_feasibility(model.system).status == ip::Status::infeasible);
}

TEST_CASE("n-fold: errors") {
    CHECK_THROWS_AS(build_nfold(make({{1, 1}})), InapplicableError);
    NFoldOptions tight;
    tight.variable_guard = 10;
    CHECK_THROWS_AS(build_nfold(make({{1, 1}}, 3), tight), GuardExceeded);
}

TEST_CASE("n-fold witness: sort by slot, ties by index") {
    const Instance inst = make({{1, 1}}, 3);
    CHECK(nfold_witness(inst, slot_assignment(inst, {{1, 2}})).days[0] == Permutation{0, 1});
    CHECK(nfold_witness(inst, slot_assignment(inst, {{2, 1}})).days[0] == Permutation{1, 0});
    const ScheduleSet tie = nfold_witness(inst, slot_assignment(inst, {{2, 2}}));
    CHECK(tie.days[0] == Permutation{0, 1});
    CHECK(is_equitable(inst, tie));

    ip::Assignment broken = slot_assignment(inst, {{1, 2}});
    broken.values[nfold_x_index(1, 3, 0, 0, 3)] = 1;
    CHECK_THROWS_WITH_AS(nfold_witness(inst, broken), doctest::Contains("several"), ValidationError);
    broken.values[nfold_x_index(1, 3, 0, 0, 3)] = 0;
    broken.values[nfold_x_index(1, 3, 0, 0, 1)] = 0;
    CHECK_THROWS_WITH_AS(nfold_witness(inst, broken), doctest::Contains("no completion slot"), ValidationError);
}

TEST_CASE("property: n-fold equivalence, witnesses and size law") {
    std::mt19937_64 rng(401);
    for (int t = 0; t < 40; ++t) {
        const int n = oracle::uniform(rng, 1, 3), m = oracle::uniform(rng, 1, 2);
        const Instance inst = oracle::random_instance(rng, n, m, 3);
        const Time best = oracle::plain_min_k(inst);
        for (Time k = 0; k <= bounds(inst).upper; ++k) {
            const Instance with_k = inst.with_k(k);
            const NFoldModel model = build_nfold(with_k);
            CHECK(model.system.num_variables() == n * model.meta.s);
            CHECK(model.meta.s == 2 * m * (k + 1));
            CHECK(model.meta.ell1 == m * (k + 1));
            CHECK(model.meta.ell2 == 2 * m + 1 + m * (k + 1));
            CHECK(model.system.num_constraints() == n * model.meta.ell2 + model.meta.ell1);
            CHECK(count_tag(model.system, "global") == model.meta.ell1);
            for (const auto &c : model.system.constraints())
                for (const auto &term : c.terms) CHECK(std::abs(term.coeff) <= model.meta.a_max);

            const ip::SolveResult r = ip::solve_feasibility(model.system);
            CHECK((r.status == ip::Status::feasible) == (k >= best));
            if (r.status == ip::Status::feasible) CHECK(is_equitable(with_k, nfold_witness(with_k, *r.assignment)));
        }
    }
}

TEST_CASE("property: restricted completion range keeps equivalence") {
    std::mt19937_64 rng(402);
    NFoldOptions restrict;
    restrict.restrict_completion_range = true;
    for (int t = 0; t < 40; ++t) {
        const Instance inst = oracle::random_instance(rng, oracle::uniform(rng, 1, 3), oracle::uniform(rng, 1, 2), 3);
        const Time best = oracle::plain_min_k(inst);
        for (Time k = 0; k <= bounds(inst).upper; ++k) {
            const Instance with_k = inst.with_k(k);
            const NFoldModel model = build_nfold(with_k, restrict);
            const ip::SolveResult r = ip::solve_feasibility(model.system);
            CHECK((r.status == ip::Status::feasible) == (k >= best));
            if (r.status == ip::Status::feasible) CHECK(is_equitable(with_k, nfold_witness(with_k, *r.assignment)));
        }
    }
}

TEST_CASE("category ILP: single category example") {
    const Instance inst = make({{1, 2}, {1, 2}}, 5);
    const CategoryIlp ilp = build_category_ilp(inst);
    CHECK(ilp.model.categories.size() == 1);
    CHECK(ilp.model.multiplicity == std::vector<int>{2});
    CHECK(ilp.model.perms.size() == 2);
    CHECK(count_tag(ilp.system, "count") == 1);
    CHECK(count_tag(ilp.system, "budget") == 2);
    CHECK(ilp.system.variables()[1].name == "x[c1][2,1]");

    const ip::SolveResult r = ip::solve_feasibility(ilp.system);
    REQUIRE(r.status == ip::Status::feasible);
    const ScheduleSet s = category_witness(inst, ilp.model, *r.assignment);
    CHECK(s.days[0] == Permutation{0, 1});
    CHECK(s.days[1] == Permutation{1, 0});
    CHECK(evaluate(inst, s).max_total == 5);

    CHECK(ip::solve_feasibility(build_category_ilp(inst.with_k(4)).system).status == ip::Status::infeasible);
}

TEST_CASE("category ILP: distinct profiles and witness errors") {
    const Instance inst = make({{1, 2}, {3, 4}}, 20);
    const CategoryIlp ilp = build_category_ilp(inst);
    CHECK(ilp.model.categories.size() == 2);
    CHECK(ilp.model.multiplicity == std::vector<int>{1, 1});
    CHECK(ilp.model.day_category == std::vector<int>{0, 1});

    const Instance same = make({{1, 2}, {1, 2}, {1, 2}}, 20);
    const CategoryIlp one = build_category_ilp(same);
    const ScheduleSet s = category_witness(same, one.model, ip::Assignment{{3, 0}});
    for (const auto &day : s.days) CHECK(day == Permutation{0, 1});
    CHECK_THROWS_AS(category_witness(same, one.model, ip::Assignment{{1, 1}}), ValidationError);
    CHECK_THROWS_AS(category_witness(same, one.model, ip::Assignment{{3, 1}}), ValidationError);
    CHECK_THROWS_AS(category_witness(same, one.model, ip::Assignment{{3}}), ValidationError);

    CHECK_THROWS_AS(build_category_ilp(make({{1, 2}})), InapplicableError);
    CHECK_THROWS_AS(build_category_ilp(make({{1, 2, 3}}, 5), 2), GuardExceeded);
}

TEST_CASE("property: category ILP equivalence, witnesses and count law") {
    std::mt19937_64 rng(403);
    for (int t = 0; t < 60; ++t) {
        const int n = oracle::uniform(rng, 1, 3), m = oracle::uniform(rng, 1, 4);
        const Time lo = oracle::uniform(rng, 0, 3), hi = oracle::uniform(rng, 0, 3);
        TimeMatrix proc(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) proc(i, j) = oracle::uniform(rng, 0, 1) ? lo : hi;
        const Instance inst(proc);
        const Time best = oracle::plain_min_k(inst);
        std::set<Time> values(proc.data(), proc.data() + proc.size());
        for (Time k = 0; k <= bounds(inst).upper; ++k) {
            const Instance with_k = inst.with_k(k);
            const CategoryIlp ilp = build_category_ilp(with_k);
            const double cap = std::min<double>(m, std::pow(static_cast<double>(values.size()), n));
            CHECK(static_cast<double>(ilp.model.categories.size()) <= cap);
            int total = 0;
            for (int mc : ilp.model.multiplicity) total += mc;
            CHECK(total == m);
            for (std::size_t c = 0; c < ilp.model.categories.size(); ++c)
                for (std::size_t s = 0; s < ilp.model.perms.size(); ++s) {
                    const Instance one_day(Eigen::Map<const TimeMatrix>(ilp.model.categories[c].data(), 1, n));
                    const auto report = evaluate(one_day, ScheduleSet{{ilp.model.perms[s]}});
                    CHECK(report.per_client == ilp.model.completion[c][s]);
                }

            const ip::SolveResult r = ip::solve_feasibility(ilp.system);
            CHECK((r.status == ip::Status::feasible) == (k >= best));
            if (r.status == ip::Status::feasible)
                CHECK(is_equitable(with_k, category_witness(with_k, ilp.model, *r.assignment)));
        }
    }
}
