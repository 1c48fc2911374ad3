#include <doctest.h>

#include <random>

#include "equisched/instance.hpp"
#include "equisched/io.hpp"
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

ScheduleSet random_schedule(std::mt19937_64 &rng, int n, int m) {
    ScheduleSet s;
    for (int d = 0; d < m; ++d) {
        Permutation p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        s.days.push_back(p);
    }
    return s;
}

}  // namespace

TEST_CASE("evaluate: single day prefix sums") {
    const Instance inst = make({{2, 3}});
    auto r = evaluate(inst, ScheduleSet{{{0, 1}}});
    CHECK(r.per_day(0, 0) == 2);
    CHECK(r.per_day(0, 1) == 5);
    CHECK(r.max_total == 5);

    r = evaluate(inst, ScheduleSet{{{1, 0}}});
    CHECK(r.per_day(0, 1) == 3);
    CHECK(r.per_day(0, 0) == 5);
    CHECK(r.max_total == 5);
}

TEST_CASE("evaluate: two-day example against the cumulative-sum oracle") {
    const Instance inst = make({{3, 1, 4}, {5, 2, 1}}, 10);
    const ScheduleSet s{{{1, 0, 2}, {2, 0, 1}}};
    const auto r = evaluate(inst, s);
    CHECK(r.per_client(0) == 10);
    CHECK(r.per_client(1) == 9);
    CHECK(r.per_client(2) == 9);
    CHECK(r.max_total == 10);
    const auto expected = oracle::totals(inst, s);
    for (int j = 0; j < 3; ++j) CHECK(r.per_client(j) == expected[j]);

    CHECK(is_equitable(inst, s));
    CHECK_FALSE(is_equitable(inst.with_k(9), s));
}

TEST_CASE("is_equitable: all-zero instance at k=0") {
    const Instance inst = make({{0, 0, 0}, {0, 0, 0}}, 0);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) CHECK(is_equitable(inst, random_schedule(rng, 3, 2)));
}

TEST_CASE("is_equitable requires k") {
    const Instance inst = make({{1}});
    CHECK_THROWS_AS(is_equitable(inst, ScheduleSet{{{0}}}), InapplicableError);
}

TEST_CASE("schedule validation names the day") {
    const Instance inst = make({{1, 2}, {3, 4}}, 10);
    CHECK_THROWS_WITH_AS(evaluate(inst, ScheduleSet{{{0, 1}, {1, 1}}}), doctest::Contains("day 2"), ValidationError);
    CHECK_THROWS_AS(evaluate(inst, ScheduleSet{{{0, 1}}}), ValidationError);
    CHECK_THROWS_AS(evaluate(inst, ScheduleSet{{{0, 1}, {0}}}), ValidationError);
    CHECK_THROWS_AS(evaluate(inst, ScheduleSet{{{0, 1}, {0, 2}}}), ValidationError);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(Instance(TimeMatrix(0, 0)), ValidationError);
    CHECK_THROWS_AS(make({{1, -1}}), ValidationError);
    CHECK_THROWS_AS(make({{1}}, -1), ValidationError);
    CHECK_THROWS_AS(make({{kMaxTotalTime, 1}}), ValidationError);
}

TEST_CASE("bounds") {
    auto b = bounds(make({{3, 1, 4}, {5, 2, 1}}));
    CHECK(b.lower == 8);
    CHECK(b.upper == 16);
    b = bounds(make({{0, 0}, {0, 0}}));
    CHECK(b.lower == 0);
    CHECK(b.upper == 0);
    b = bounds(make({{2}, {7}, {1}}));
    CHECK(b.lower == 10);
    CHECK(b.upper == 10);
}

TEST_CASE("parse_instance") {
    Instance inst = parse_instance(R"({"clients":2,"days":1,"k":5,"p":[[2,3]]})");
    CHECK(inst.num_clients() == 2);
    CHECK(inst.num_days() == 1);
    CHECK(inst.k() == 5);

    inst = parse_instance(R"({"clients":1,"days":1,"p":[[0]]})");
    CHECK_FALSE(inst.k().has_value());

    CHECK_THROWS_WITH_AS(parse_instance(R"({"clients":2,"days":1,"p":[[2]]})"),
                         doctest::Contains("row 0 has 1 entries, expected 2"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_instance(R"({"clients":2,"days":1,"p":[[2,-1]]})"), doctest::Contains("/p/0/1"),
                         ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"clients":2,"days":2,"p":[[2,1]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"clients":1,"days":1,"p":[[1.5]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"clients":1,"days":1,"k":-2,"p":[[1]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance("{not json"), ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"days":1,"p":[[1]]})"), ValidationError);
}

TEST_CASE("serialize_instance round trip is byte-stable") {
    const std::string text = R"({"clients":2,"days":1,"k":5,"p":[[2,3]]})"
                             "\n";
    CHECK(serialize_instance(parse_instance(text)) == text);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        Instance inst = oracle::random_instance(rng, oracle::uniform(rng, 1, 5), oracle::uniform(rng, 1, 4), 20);
        if (t % 2) inst = inst.with_k(oracle::uniform(rng, 0, 50));
        const std::string s = serialize_instance(inst);
        CHECK(parse_instance(s) == inst);
        CHECK(serialize_instance(parse_instance(s)) == s);
    }
}

TEST_CASE("solution round trip") {
    const Instance inst = make({{3, 1, 4}, {5, 2, 1}}, 10);
    const Solution sol = make_solution(inst, true, 10, ScheduleSet{{{1, 0, 2}, {2, 0, 1}}});
    const std::string text = serialize_solution(sol);
    CHECK(text ==
          R"({"feasible":true,"k":10,"schedules":[[2,1,3],[3,1,2]],"per_client_total":[10,9,9],"max_total":10})"
          "\n");
    const Solution back = parse_solution(text);
    CHECK(back.schedules == sol.schedules);
    CHECK(back.per_client_total == sol.per_client_total);
    CHECK(back.max_total == 10);

    const Solution none = make_solution(inst, false, 9, std::nullopt);
    const std::string none_text = serialize_solution(none);
    CHECK(none_text == R"({"feasible":false,"k":9,"schedules":[],"per_client_total":[],"max_total":null})"
                       "\n");
    CHECK_FALSE(parse_solution(none_text).schedules.has_value());
}

TEST_CASE("property: completion report invariants") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 300; ++t) {
        const int n = oracle::uniform(rng, 1, 6), m = oracle::uniform(rng, 1, 4);
        const Instance inst = oracle::random_instance(rng, n, m, 9);
        const ScheduleSet s = random_schedule(rng, n, m);
        const auto r = evaluate(inst, s);
        const auto expected = oracle::totals(inst, s);
        Time mx = 0;
        for (int j = 0; j < n; ++j) {
            CHECK(r.per_client(j) == expected[j]);
            CHECK(r.per_client(j) == r.per_day.col(j).sum());
            mx = std::max(mx, expected[j]);
        }
        CHECK(r.max_total == mx);
        for (int i = 0; i < m; ++i) {
            Time prev = 0;
            for (int client : s.days[i]) {
                CHECK(r.per_day(i, client) >= prev);
                prev = r.per_day(i, client);
                CHECK(r.per_day(i, client) >= inst.p(i, client));
                CHECK(r.per_day(i, client) <= inst.proc().row(i).sum());
            }
        }
    }
}

TEST_CASE("property: moving zero jobs first never increases a total") {
    std::mt19937_64 rng(102);
    for (int t = 0; t < 300; ++t) {
        const int n = oracle::uniform(rng, 1, 6), m = oracle::uniform(rng, 1, 3);
        const Instance inst = oracle::random_instance(rng, n, m, 3);
        const ScheduleSet s = random_schedule(rng, n, m);
        ScheduleSet moved = s;
        for (int i = 0; i < m; ++i)
            std::stable_partition(moved.days[i].begin(), moved.days[i].end(),
                                  [&](int c) { return inst.p(i, c) == 0; });
        const auto before = evaluate(inst, s), after = evaluate(inst, moved);
        for (int j = 0; j < n; ++j) CHECK(after.per_client(j) <= before.per_client(j));
    }
}

TEST_CASE("property: client relabeling and day permutation") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 200; ++t) {
        const int n = oracle::uniform(rng, 1, 6), m = oracle::uniform(rng, 1, 4);
        const Instance inst = oracle::random_instance(rng, n, m, 9);
        const ScheduleSet s = random_schedule(rng, n, m);
        const auto base = evaluate(inst, s);

        // client j becomes relabel[j]
        Permutation relabel = random_schedule(rng, n, 1).days[0];
        TimeMatrix proc(m, n);
        ScheduleSet rs = s;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) proc(i, relabel[j]) = inst.p(i, j);
            for (int &c : rs.days[i]) c = relabel[c];
        }
        const auto relabeled = evaluate(Instance(proc), rs);
        for (int j = 0; j < n; ++j) CHECK(relabeled.per_client(relabel[j]) == base.per_client(j));
        CHECK(relabeled.max_total == base.max_total);

        Permutation day_order = random_schedule(rng, m, 1).days[0];
        TimeMatrix dproc(m, n);
        ScheduleSet ds;
        for (int i = 0; i < m; ++i) {
            dproc.row(i) = inst.proc().row(day_order[i]);
            ds.days.push_back(s.days[day_order[i]]);
        }
        const auto shuffled = evaluate(Instance(dproc), ds);
        CHECK(shuffled.per_client == base.per_client);
    }
}

TEST_CASE("default schedule puts zero jobs first") {
    const Instance inst = make({{1, 0, 2, 0}});
    CHECK(default_schedule(inst).days[0] == Permutation{1, 3, 0, 2});
}
