#include "doctest.h"

#include <stdexcept>

#include "engine_enum.hpp"
#include "hffs/engine.hpp"

using namespace hffs;
using namespace hffs::engine;

namespace {

int fixed_task(Model& m, Time dur, Time est = 0, Time lct = kInf) {
    TaskVar t;
    t.name = "t" + std::to_string(m.tasks.size());
    t.duration = Term::constant(dur);
    t.est = est;
    t.lct = lct;
    return m.add_task(t);
}

Cumulative pool(Time cap, const std::vector<int>& tasks, bool disjunctive = false) {
    Cumulative c;
    c.name = "r";
    c.capacity = cap;
    c.disjunctive = disjunctive;
    for (int t : tasks) c.entries.push_back({t, Term::constant(1), {}});
    return c;
}

}  // namespace

TEST_CASE("two unit tasks cannot share one machine inside [0,1]") {
    Model m;
    const int a = fixed_task(m, 1, 0, 1), b = fixed_task(m, 1, 0, 1);
    m.resources.push_back(pool(1, {a, b}, true));
    m.objective_tasks = {a, b};
    const auto r = solve(m);
    CHECK(r.status == Status::Infeasible);
    CHECK(!r.incumbent);
}

TEST_CASE("exact offset pushes the successor") {
    Model m;
    const int a = fixed_task(m, 1, 3), b = fixed_task(m, 1);
    m.offsets.push_back({b, a, Term::constant(3)});
    m.objective_tasks = {b};
    const auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->start[static_cast<std::size_t>(b)] == 7);
    CHECK(r.incumbent->objective == 8);
}

TEST_CASE("capacity 2, three tasks of length 5") {
    for (Time h : {Time{10}, Time{9}}) {
        Model m;
        std::vector<int> ts;
        for (int k = 0; k < 3; ++k) ts.push_back(fixed_task(m, 5));
        m.resources.push_back(pool(2, ts));
        m.objective_tasks = ts;
        m.horizon = h;
        const auto r = solve(m);
        if (h == 10) {
            REQUIRE(r.status == Status::Optimal);
            CHECK(r.incumbent->objective == 10);
        } else {
            CHECK(r.status == Status::Infeasible);
        }
    }
}

TEST_CASE("one machine runs 3 and 4 back to back") {
    Model m;
    const int a = fixed_task(m, 3), b = fixed_task(m, 4);
    m.resources.push_back(pool(1, {a, b}, true));
    m.objective_tasks = {a, b};
    const auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->objective == 7);
    CHECK(r.lower_bound == 7);
    CHECK(verify(m, *r.incumbent).empty());
}

TEST_CASE("menu durations and weights follow a choice") {
    Model m;
    const int crew = m.add_choice("crew", {1, 2, 3});
    TaskVar t;
    t.duration = Term::by(crew, {9, 5, 3});
    const int a = m.add_task(t);
    const int b = fixed_task(m, 4);
    Cumulative w;
    w.capacity = 3;
    w.entries = {{a, Term::by(crew, {1, 2, 3}), {}}, {b, Term::constant(1), {}}};
    m.resources.push_back(w);
    m.objective_tasks = {a, b};
    const auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    // crew 2 runs beside b: 5; crew 3 must wait for b: 7
    CHECK(r.incumbent->objective == 5);
    CHECK(r.incumbent->choice[static_cast<std::size_t>(crew)] == 1);
}

TEST_CASE("conditional bounds") {
    Model m;
    const int c = m.add_choice("c", {0, 1});
    TaskVar t;
    t.duration = Term::by(c, {2, 4});
    const int a = m.add_task(t);
    m.objective_tasks = {a};
    m.conditionals.push_back({{{c, 0}}, 6});
    auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->objective == 4);
    CHECK(r.incumbent->choice[0] == 1);

    m.conditionals.push_back({{{c, 1}}, kInf});
    r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->objective == 6);
    CHECK(r.incumbent->choice[0] == 0);

    m.conditionals.push_back({{{c, 0}}, kInf});
    CHECK(solve(m).status == Status::Infeasible);
}

TEST_CASE("objective may exceed the horizon through a bound") {
    Model m;
    const int c = m.add_choice("c", {0});
    const int a = fixed_task(m, 2);
    m.objective_tasks = {a};
    m.horizon = 5;
    m.conditionals.push_back({{{c, 0}}, 9});
    const auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->objective == 9);
}

TEST_CASE("zero-length free task does not block a full resource") {
    const auto m = oracle::random_model(1361);
    const auto r = solve(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.incumbent->objective == *oracle::enumerate_optimum(m));
}

TEST_CASE("check_model rejects malformed models") {
    Model m;
    fixed_task(m, 1);
    m.objective_tasks = {3};
    CHECK_THROWS_AS(check_model(m), std::invalid_argument);
    m.objective_tasks = {0};
    m.offsets.push_back({0, 5, Term::constant(0)});
    CHECK_THROWS_AS(solve(m), std::invalid_argument);
    m.offsets.clear();
    const int c = m.add_choice("c", {1, 2});
    TaskVar t;
    t.duration = Term::by(c, {1, 2, 3});
    m.add_task(t);
    CHECK_THROWS_AS(check_model(m), std::invalid_argument);
    Model e;
    e.add_choice("empty", {});
    CHECK_THROWS_AS(check_model(e), std::invalid_argument);
}

TEST_CASE("verify reports a broken solution") {
    Model m;
    const int a = fixed_task(m, 3), b = fixed_task(m, 4);
    m.resources.push_back(pool(1, {a, b}, true));
    m.objective_tasks = {a, b};
    Solution s;
    s.start = {0, 1};
    s.end = {3, 5};
    s.objective = 5;
    CHECK(!verify(m, s).empty());
    s.start = {0, 3};
    s.end = {3, 6};
    CHECK(!verify(m, s).empty());  // wrong duration
    s.end = {3, 7};
    s.objective = objective_of(m, s);
    CHECK(verify(m, s).empty());
    CHECK(s.objective == 7);
}

TEST_CASE("node limit returns an anytime answer") {
    Model m;
    std::vector<int> ts;
    for (int k = 0; k < 8; ++k) ts.push_back(fixed_task(m, 1 + k % 3));
    m.resources.push_back(pool(2, ts));
    m.objective_tasks = ts;
    SearchParams p;
    p.node_limit = 3;
    const auto r = solve(m, p);
    CHECK(r.nodes <= 3);
    CHECK((r.status == Status::Feasible || r.status == Status::Unknown || r.status == Status::Optimal));
    if (r.incumbent) CHECK(r.lower_bound <= r.incumbent->objective);
}
