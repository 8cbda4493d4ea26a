// Randomized checks of the stated invariants against independent oracles.
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "engine_enum.hpp"
#include "hffs/bounds.hpp"
#include "hffs/heuristic.hpp"
#include "hffs/lbbd.hpp"
#include "hffs/master.hpp"
#include "lp_oracle.hpp"

using namespace hffs;

namespace {

using Locus = std::pair<std::string, std::string>;

// Per time unit, no sweeping.
std::set<Locus> scan_overloads(const Instance& inst, const Schedule& s) {
    Time end = 0;
    for (const auto& job : s.ops)
        for (const auto& op : job) end = std::max(end, op.wait_after.end);
    std::set<Locus> out;
    for (Time t = 0; t < end; ++t) {
        std::vector<int> proc(static_cast<std::size_t>(inst.num_machines())), in(proc.size()), outq(proc.size());
        int crew = 0;
        for (const auto& job : s.ops)
            for (const auto& op : job) {
                auto inside = [t](const Interval& iv) { return iv.start <= t && t < iv.end; };
                const auto m = static_cast<std::size_t>(op.machine);
                if (inside(op.process)) {
                    ++proc[m];
                    crew += op.workers;
                }
                if (inside(op.wait_before)) ++in[m];
                if (inside(op.wait_after)) ++outq[m];
            }
        for (std::size_t m = 0; m < proc.size(); ++m) {
            const std::string where = "machine " + std::to_string(inst.machines[m].id);
            if (proc[m] > 1) out.insert({"no_overlap", where});
            if (in[m] > inst.buffer_in[m]) out.insert({"buffer_in", where});
            if (outq[m] > inst.buffer_out[m]) out.insert({"buffer_out", where});
        }
        if (crew > inst.workers_total) out.insert({"workers_total", "instance"});
    }
    return out;
}

}  // namespace

TEST_CASE("sweep occupancy agrees with a per-unit scan") {
    std::mt19937_64 rng(11);
    int disagreements = 0, overloaded = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        Schedule s = construct_schedule(inst);
        REQUIRE(validate_schedule(inst, s).empty());
        // pull random operations earlier or later, keeping each chain intact
        for (int k = 0; k < 3; ++k) {
            auto& job = s.ops[rng() % s.ops.size()];
            auto& op = job[rng() % job.size()];
            const Time d = static_cast<Time>(rng() % 7) - 3;
            const Time lo = -op.wait_before.length(), hi = op.wait_after.length();
            const Time shift = std::clamp(d, lo, hi);
            op.process.start += shift;
            op.process.end += shift;
            op.wait_before.end = op.process.start;
            op.wait_after.start = op.process.end;
        }
        // and stretch some waits
        auto& job = s.ops[rng() % s.ops.size()];
        job.front().wait_before.start = std::max<Time>(0, job.front().wait_before.start - static_cast<Time>(rng() % 4));
        s.makespan = makespan_of(s);
        std::set<Locus> swept;
        for (const auto& v : validate_schedule(inst, s))
            if (v.kind == "no_overlap" || v.kind == "buffer_in" || v.kind == "buffer_out" || v.kind == "workers_total")
                swept.insert({v.kind, v.where});
        const auto scanned = scan_overloads(inst, s);
        if (swept != scanned) ++disagreements;
        if (!scanned.empty()) ++overloaded;
        auto text = [&] {
            std::vector<std::string> t;
            for (const auto& v : validate_schedule(inst, s)) t.push_back(v.to_string());
            return t;
        };
        CHECK(text() == text());
    }
    CHECK(disagreements == 0);
    CHECK(overloaded > 10);
}

TEST_CASE("engine matches exhaustive enumeration") {
    int feasible = 0;
    for (std::uint64_t seed = 0; seed < 1500; ++seed) {
        const auto m = oracle::random_model(seed);
        const auto want = oracle::enumerate_optimum(m);
        const auto got = engine::solve(m);
        if (!want) {
            CHECK_MESSAGE(got.status == engine::Status::Infeasible, "seed " << seed);
            continue;
        }
        ++feasible;
        REQUIRE_MESSAGE(got.status == engine::Status::Optimal, "seed " << seed);
        CHECK_MESSAGE(got.incumbent->objective == *want, "seed " << seed);
        CHECK(engine::verify(m, *got.incumbent).empty());
        CHECK(got.lower_bound == *want);
    }
    CHECK(feasible > 300);
}

TEST_CASE("engine node budgets are deterministic and bounds ordered") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto m = oracle::random_model(seed);
        engine::SearchParams p;
        p.node_limit = 1 + static_cast<long>(seed % 7);
        p.seed = seed;
        const auto a = engine::solve(m, p), b = engine::solve(m, p);
        CHECK(a.status == b.status);
        CHECK(a.nodes == b.nodes);
        CHECK(a.lower_bound == b.lower_bound);
        CHECK(a.incumbent == b.incumbent);
        if (a.incumbent) {
            CHECK(a.lower_bound <= a.incumbent->objective);
            CHECK(engine::verify(m, *a.incumbent).empty());
        }
    }
}

TEST_CASE("shortest transport is at least the sum of per-transition minima") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        for (int j = 0; j < inst.num_jobs(); ++j) {
            const auto& r = inst.route[static_cast<std::size_t>(j)];
            Time sum = 0;
            for (std::size_t i = 1; i < r.size(); ++i) {
                Time lo = engine::kInf;
                for (int m : inst.machines_of_stage(r[i - 1]))
                    for (int n : inst.machines_of_stage(r[i])) lo = std::min(lo, inst.transport_time(m, n));
                sum += lo;
            }
            CHECK(shortest_transport(inst, j) >= sum);
        }
    }
}

TEST_CASE("LB8 equals the LP optimum") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        const auto lp = oracle::lb8_lp(inst);
        const auto f = lb8_fraction(inst);
        CHECK_MESSAGE(lp == oracle::Rational(f.num, f.den), "seed " << seed);
    }
}

TEST_CASE("every bound stays below the optimum") {
    for (std::uint64_t seed = 500; seed < 540; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        const auto bf = oracle::brute_force(inst);
        REQUIRE(bf);
        CHECK(validate_schedule(inst, bf->schedule).empty());
        const auto rep = best_lb(inst);
        CHECK(rep.best <= bf->makespan);
        CHECK(rep.lb1 <= bf->makespan);
        CHECK(rep.lb2 <= bf->makespan);
        CHECK(rep.lb3 <= bf->makespan);
        CHECK(rep.lb8 <= bf->makespan);
        for (const auto& v : {rep.lb4, rep.lb5, rep.lb6, rep.lb7})
            if (v) CHECK(*v <= bf->makespan);
    }
}

TEST_CASE("load bounds do not drop when a job is added") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto inst = oracle::tiny_instance(seed);
        auto more = inst;
        const auto donor = oracle::tiny_instance(seed + 1000);
        // copy the donor's first job onto stages both instances have
        std::vector<int> r;
        std::vector<std::vector<Time>> rows(static_cast<std::size_t>(more.num_stages()));
        for (int s : donor.route[0])
            if (s < more.num_stages()) {
                r.push_back(s);
                const auto su = static_cast<std::size_t>(s);
                for (int w = more.workers_min[su]; w <= more.workers_max[su]; ++w)
                    rows[su].push_back((donor.proc(0, s, 1) + w - 1) / w);
            }
        if (r.empty()) continue;
        more.job_ids.push_back(more.num_jobs() + 1);
        more.route.push_back(r);
        more.proc_time.push_back(rows);
        REQUIRE(validate_instance(more).empty());
        CHECK(lb1_stage_load(more) >= lb1_stage_load(inst));
        CHECK(lb8_malleable(more) >= lb8_malleable(inst));
        CHECK(best_lb(more).best >= std::max(lb1_stage_load(inst), lb8_malleable(inst)));
    }
}

TEST_CASE("a cut is respected on re-solve") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = oracle::tiny_instance(seed + 700);
        const auto first = solve_master(inst, {}, 0);
        REQUIRE(first.status == engine::Status::Optimal);
        const Time zeta = first.objective + 1 + static_cast<Time>(rng() % 5);
        const auto again = solve_master(inst, {{first.machine_seq, zeta}}, 0);
        REQUIRE(again.status == engine::Status::Optimal);
        if (again.machine_seq == first.machine_seq) CHECK(again.objective >= zeta);
        CHECK(again.lower_bound >= first.lower_bound);
    }
}

TEST_CASE("real gap never exceeds original gap") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 2000; ++k) {
        const Time ub = 1 + static_cast<Time>(rng() % 500);
        const Time lb = static_cast<Time>(rng() % (ub + 1));
        const Time best = static_cast<Time>(rng() % (ub + 1));
        const auto [o, r] = gaps(best, lb, ub);
        CHECK(r <= o);
        CHECK(r >= 0);
    }
}
