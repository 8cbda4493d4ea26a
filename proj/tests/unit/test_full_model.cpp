#include "doctest.h"

#include "brute_force.hpp"
#include "builders.hpp"
#include "hffs/bounds.hpp"
#include "hffs/full_model.hpp"

using namespace hffs;
using testing_support::Builder;

TEST_CASE("build_full counts") {
    const auto inst = Builder({2, 1}, 1).job({{0, {4}}, {1, {5}}}).all_transport(3).build();
    const auto sm = build_full(inst);
    CHECK(sm.model.choices.size() == 4);
    CHECK(sm.model.tasks.size() == 6);
    REQUIRE(sm.ops.size() == 1);
    CHECK(sm.ops[0].size() == 2);
    CHECK(sm.ops[0][0].machines.size() == 2);
}

TEST_CASE("single chain") {
    const auto inst = Builder({1, 1}, 1).job({{0, {4}}, {1, {5}}}).all_transport(3).build();
    const auto out = solve_full(inst);
    REQUIRE(out.search.status == engine::Status::Optimal);
    REQUIRE(out.schedule);
    CHECK(out.schedule->makespan == 12);
    CHECK(validate_schedule(inst, *out.schedule).empty());
}

TEST_CASE("two workers shorten the chain") {
    const auto inst = Builder({1, 1}, 2).windows(1, 2).nominal_job({{0, 4}, {1, 5}}).all_transport(3).build();
    CHECK(inst.proc(0, 1, 2) == 3);
    const auto out = solve_full(inst);
    REQUIRE(out.schedule);
    CHECK(out.search.status == engine::Status::Optimal);
    CHECK(out.schedule->makespan == 8);
    for (const auto& op : out.schedule->ops[0]) CHECK(op.workers == 2);
}

TEST_CASE("a slack worker pool does not change the optimum") {
    Builder a({2, 2}, 6), b({2, 2}, 40);
    for (auto* x : {&a, &b}) {
        x->windows(1, 3).all_transport(2).buffers(1, 1);
        x->nominal_job({{0, 5}, {1, 4}}).nominal_job({{0, 3}, {1, 6}}).nominal_job({{1, 7}});
    }
    const auto ra = solve_full(a.build()), rb = solve_full(b.build());
    REQUIRE(ra.search.status == engine::Status::Optimal);
    REQUIRE(rb.search.status == engine::Status::Optimal);
    CHECK(ra.schedule->makespan == rb.schedule->makespan);
}

TEST_CASE("small instances: optimum, bound consistency, cold start") {
    for (std::uint64_t seed = 100; seed < 115; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        const auto bf = oracle::brute_force(inst);
        REQUIRE(bf);
        const auto out = solve_full(inst);
        REQUIRE(out.search.status == engine::Status::Optimal);
        CHECK(out.schedule->makespan == bf->makespan);
        CHECK(out.schedule->makespan >= best_lb(inst).best);
        CHECK(serial_horizon(inst) >= bf->makespan);
        const auto cold = solve_full(inst, {}, false);
        REQUIRE(cold.search.status == engine::Status::Optimal);
        CHECK(cold.schedule->makespan == bf->makespan);
    }
}

TEST_CASE("a cold start under a tiny node budget may find nothing") {
    Builder b({1, 1}, 2);
    b.windows(1, 2).all_transport(2);
    for (int j = 0; j < 12; ++j) b.nominal_job({{0, 3 + j % 4}, {1, 2 + j % 5}});
    engine::SearchParams p;
    p.node_limit = 1;
    const auto out = solve_full(b.build(), p, false);
    CHECK(out.search.status == engine::Status::Unknown);
    CHECK(!out.schedule);
    const auto warm = solve_full(b.build(), p, true);
    CHECK(warm.schedule);
}
