#include "hffs/lbbd.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "hffs/bounds.hpp"
#include "hffs/subproblem.hpp"

namespace hffs {

std::uint64_t assignment_hash(const Instance& inst, const MachineSeq& seq) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](std::uint8_t b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    };
    for (const auto& job : seq) {
        for (int m : job) {
            const auto id = static_cast<std::uint32_t>(inst.machines[static_cast<std::size_t>(m)].id);
            for (int k = 0; k < 4; ++k) feed(static_cast<std::uint8_t>(id >> (8 * k)));
        }
        feed(0xff);
    }
    return h;
}

std::pair<double, double> gaps(Time best_lb, Time lb, Time ub) {
    if (ub <= 0) throw std::invalid_argument("gaps: upper bound must be positive");
    const double u = static_cast<double>(ub);
    const double original = 100.0 * (u - static_cast<double>(lb)) / u;
    const double real = 100.0 * (u - static_cast<double>(std::max(best_lb, lb))) / u;
    return {original, real};
}

RunLog run_lbbd(const Instance& inst, const LbbdBudget& budget, std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    auto remaining = [&](double cap) {
        if (budget.total_time < 0) return cap;
        const double left = std::max(0.0, budget.total_time - elapsed());
        return cap < 0 ? left : std::min(cap, left);
    };

    RunLog log;
    log.best_lb = best_lb(inst).best;
    log.lb = log.best_lb;
    std::vector<BendersCut> cuts;
    long master_nodes = budget.master_nodes;
    long sub_nodes = budget.sub_nodes;
    double sub_time = budget.sub_time;
    double master_time = budget.master_time;
    int doublings = 0, master_doublings = 0;
    std::set<std::uint64_t> stuck;  // timed out with the budget fully grown

    for (int k = 1;; ++k) {
        if (budget.max_iterations >= 0 && k > budget.max_iterations) break;
        if (budget.total_time >= 0 && elapsed() >= budget.total_time) break;
        if (log.ub && log.lb >= *log.ub) break;

        IterationLog it;
        it.k = k;
        engine::SearchParams mp;
        mp.seed = seed;
        mp.node_limit = master_nodes;
        mp.time_limit = remaining(master_time);
        const MasterSolution ms = solve_master(inst, cuts, log.lb, mp);
        it.master_lb = ms.lower_bound;
        it.master_nodes = ms.nodes;
        it.master_seconds = ms.seconds;
        log.nodes += ms.nodes;

        if (ms.status == engine::Status::Infeasible) {
            // every assignment is cut off: the incumbent is optimal
            it.sub_status = "skipped";
            it.cut = "none";
            if (log.ub) log.lb = *log.ub;
            it.lb = log.lb;
            it.ub = log.ub;
            log.iterations.push_back(it);
            break;
        }
        log.lb = std::max(log.lb, std::min(ms.lower_bound, engine::kInf - 1));
        if (ms.machine_seq.empty()) {
            it.sub_status = "skipped";
            it.cut = "none";
            it.lb = log.lb;
            it.ub = log.ub;
            log.iterations.push_back(it);
            if (master_doublings >= budget.max_doublings || (master_nodes < 0 && budget.master_time < 0)) {
                log.stalled = true;
                break;
            }
            ++master_doublings;
            if (master_nodes > 0) master_nodes *= 2;
            if (master_time > 0) master_time *= 2;
            continue;
        }
        it.jstar_hash = assignment_hash(inst, ms.machine_seq);
        if (stuck.count(it.jstar_hash)) {
            // same assignment, same budget: the subproblem would repeat itself
            it.sub_status = "skipped";
            it.cut = "none";
            it.lb = log.lb;
            it.ub = log.ub;
            log.iterations.push_back(it);
            log.stalled = true;
            break;
        }
        if (log.ub && log.lb >= *log.ub) {
            it.sub_status = "skipped";
            it.cut = "none";
            it.lb = log.lb;
            it.ub = log.ub;
            log.iterations.push_back(it);
            break;
        }

        engine::SearchParams sp;
        sp.seed = seed;
        sp.node_limit = sub_nodes;
        sp.time_limit = remaining(sub_time);
        const SubResult sr = solve_sub(inst, ms.machine_seq, sp);
        it.sub_nodes = sr.nodes;
        it.sub_seconds = sr.seconds;
        it.sub_status = engine::to_string(sr.status);
        log.nodes += sr.nodes;
        if (sr.schedule) it.zeta = sr.zeta;

        switch (sr.status) {
            case engine::Status::Optimal:
                cuts.push_back({ms.machine_seq, sr.zeta});
                it.cut = "optimality";
                break;
            case engine::Status::Infeasible:
                cuts.push_back({ms.machine_seq, engine::kInf});
                it.cut = "exclusion";
                break;
            default:
                // A cut from an unproven value could remove the optimum.
                it.cut = "none";
                if (doublings < budget.max_doublings) {
                    ++doublings;
                    if (sub_nodes > 0) sub_nodes *= 2;
                    if (sub_time > 0) sub_time *= 2;
                } else if (sub_nodes >= 0 || sub_time >= 0) {
                    stuck.insert(it.jstar_hash);
                }
                break;
        }
        if (sr.schedule && (!log.ub || sr.zeta < *log.ub)) {
            log.ub = sr.zeta;
            log.schedule = sr.schedule;
        }
        it.lb = log.lb;
        it.ub = log.ub;
        log.iterations.push_back(it);
    }

    if (log.ub && log.lb >= *log.ub) {
        log.lb = *log.ub;
        log.status = "optimal";
    } else {
        log.status = log.ub ? "feasible" : "unknown";
    }
    log.seconds = elapsed();
    return log;
}

}  // namespace hffs
