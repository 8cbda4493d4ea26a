#include "hffs/subproblem.hpp"

#include <stdexcept>

#include "hffs/heuristic.hpp"

namespace hffs {

namespace {

void check_assignment(const Instance& inst, const MachineSeq& machines) {
    if (machines.size() != static_cast<std::size_t>(inst.num_jobs()))
        throw std::invalid_argument("machine assignment does not cover every job");
    for (std::size_t j = 0; j < machines.size(); ++j) {
        const auto& r = inst.route[j];
        if (machines[j].size() != r.size()) throw std::invalid_argument("machine assignment does not cover every operation");
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int m = machines[j][i];
            if (m < 0 || m >= inst.num_machines() || inst.machines[static_cast<std::size_t>(m)].stage != r[i])
                throw std::invalid_argument("machine of job " + std::to_string(inst.job_ids[j]) + " at stage " +
                                            std::to_string(inst.stage_ids[static_cast<std::size_t>(r[i])]) +
                                            " is not in that stage");
        }
    }
}

}  // namespace

ScheduleModel build_sub(const Instance& inst, const MachineSeq& machines, Time horizon) {
    check_assignment(inst, machines);
    return build_schedule_model(inst, horizon, &machines);
}

SubResult solve_sub(const Instance& inst, const MachineSeq& machines, const engine::SearchParams& params) {
    check_assignment(inst, machines);
    HeuristicOptions hopt;
    hopt.seed = params.seed;
    hopt.machines = machines;
    const Schedule seed = construct_schedule(inst, hopt);
    const ScheduleModel sm = build_schedule_model(inst, seed.makespan, &machines);
    engine::SearchParams p = params;
    if (!p.hint) p.hint = to_solution(sm, inst, seed);
    const auto res = engine::solve(sm.model, p);

    SubResult out;
    out.status = res.status;
    out.lower_bound = res.lower_bound;
    out.nodes = res.nodes;
    out.seconds = res.seconds;
    if (res.incumbent) {
        Schedule s = to_schedule(sm, inst, *res.incumbent);
        const auto v = validate_schedule(inst, s);
        if (!v.empty()) throw std::logic_error("subproblem returned an invalid schedule: " + v.front().to_string());
        out.zeta = s.makespan;
        out.schedule = std::move(s);
    }
    return out;
}

}  // namespace hffs
