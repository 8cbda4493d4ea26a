#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "builders.hpp"
#include "hffs/model.hpp"

using namespace hffs;
using testing_support::Builder;
using testing_support::op;

namespace {

bool has_kind(const std::vector<Violation>& v, const std::string& kind, const std::string& where = "") {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) {
        return x.kind == kind && (where.empty() || x.where == where);
    });
}

// 1 job, 2 stages, one machine each, p = (4, 5), t = 3
Instance chain() {
    return Builder({1, 1}, 1).job({{0, {4}}, {1, {5}}}).all_transport(3).build();
}

}  // namespace

TEST_CASE("validate_instance accepts a well-formed instance") {
    const auto inst = Builder({2, 1}, 2).all_transport(1).nominal_job({{0, 4}, {1, 3}}).nominal_job({{1, 5}}).build();
    CHECK(validate_instance(inst).empty());
}

TEST_CASE("validate_instance names the stage of an inverted worker window") {
    const auto inst = Builder({1}, 3).window(0, 3, 2).job({{0, {}}}).build();
    const auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "workers_window");
    CHECK(v[0].where == "stage 1");
}

TEST_CASE("validate_instance flags the work inequality") {
    const auto inst = Builder({1}, 2).window(0, 1, 2).job({{0, {10, 1}}}).build();
    const auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "eq_work");
    CHECK(v[0].where == "job 1, stage 1, w 2");
}

TEST_CASE("validate_instance finds a missing transport pair once") {
    auto inst = Builder({1, 1}, 1).job({{0, {2}}, {1, {2}}}).job({{0, {2}}, {1, {2}}}).build();
    const auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == "transport");
    CHECK(v[0].where == "machine 1 -> machine 2");
}

TEST_CASE("validate_schedule accepts the single chain") {
    const auto inst = chain();
    Schedule s;
    s.ops = {{op(0, 1, 0, 0, 4, 4), op(1, 1, 7, 7, 12, 12)}};
    s.makespan = 12;
    CHECK(validate_schedule(inst, s).empty());
    CHECK(makespan_of(s) == 12);
}

TEST_CASE("validate_schedule enforces the exact transport offset") {
    const auto inst = chain();
    Schedule s;
    s.ops = {{op(0, 1, 0, 0, 4, 4), op(1, 1, 8, 8, 13, 13)}};
    s.makespan = 13;
    const auto v = validate_schedule(inst, s);
    CHECK(has_kind(v, "transport", "job 1, stage 2"));
    // the same gap absorbed by a wait is fine
    s.ops = {{op(0, 1, 0, 0, 4, 5), op(1, 1, 8, 8, 13, 13)}};
    CHECK(validate_schedule(inst, s).empty());
}

TEST_CASE("validate_schedule counts entry buffer occupancy") {
    const auto inst = Builder({1}, 1).job({{0, {2}}}).job({{0, {2}}}).job({{0, {2}}}).buffers(1, 1).build();
    Schedule s;
    s.ops = {{op(0, 1, 0, 0, 2, 2)}, {op(0, 1, 0, 2, 4, 4)}, {op(0, 1, 0, 4, 6, 6)}};
    s.makespan = 6;
    const auto v = validate_schedule(inst, s);
    REQUIRE(!v.empty());
    for (const auto& x : v) CHECK(x.kind == "buffer_in");
    CHECK(has_kind(v, "buffer_in", "machine 1"));
}

TEST_CASE("zero-length waits take no buffer space") {
    const auto inst = Builder({1}, 1).job({{0, {2}}}).job({{0, {2}}}).buffers(0, 0).build();
    Schedule s;
    s.ops = {{op(0, 1, 0, 0, 2, 2)}, {op(0, 1, 2, 2, 4, 4)}};
    s.makespan = 4;
    CHECK(validate_schedule(inst, s).empty());
}

TEST_CASE("validate_schedule catches overlap, crews and stage order") {
    const auto inst = Builder({1, 1}, 1).job({{0, {2}}, {1, {2}}}).job({{0, {2}}}).all_transport(0).buffers(2, 2).build();
    Schedule s;
    s.ops = {{op(0, 1, 0, 0, 2, 2), op(1, 1, 2, 2, 4, 4)}, {op(0, 1, 0, 1, 3, 3)}};
    s.makespan = 4;
    auto v = validate_schedule(inst, s);
    CHECK(has_kind(v, "no_overlap", "machine 1"));
    CHECK(has_kind(v, "workers_total"));

    s.ops = {{op(0, 2, 0, 0, 2, 2), op(1, 1, 2, 2, 4, 4)}, {op(0, 1, 2, 2, 4, 4)}};
    v = validate_schedule(inst, s);
    CHECK(has_kind(v, "workers"));
}

TEST_CASE("makespan_of") {
    Schedule s;
    CHECK_THROWS_AS(makespan_of(s), std::invalid_argument);
    s.ops = {{op(0, 1, 0, 0, 12, 12)}};
    CHECK(makespan_of(s) == 12);
    s.ops = {{op(0, 1, 0, 0, 9, 9)}, {op(0, 1, 9, 9, 14, 14)}};
    CHECK(makespan_of(s) == 14);

    // stored value is not trusted
    const auto inst = Builder({1}, 1).job({{0, {9}}}).job({{0, {5}}}).build();
    s.makespan = 20;
    CHECK(makespan_of(s) == 14);
    CHECK(has_kind(validate_schedule(inst, s), "makespan"));
}
