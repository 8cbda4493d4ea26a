#include "hffs/full_model.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "hffs/heuristic.hpp"

namespace hffs {

namespace {

std::string op_name(const Instance& inst, int j, int s) {
    return std::to_string(inst.job_ids[static_cast<std::size_t>(j)]) + ":" + std::to_string(inst.stage_ids[static_cast<std::size_t>(s)]);
}

int value_index(const std::vector<int>& values, int v) {
    const auto it = std::find(values.begin(), values.end(), v);
    if (it == values.end()) return -1;
    return static_cast<int>(it - values.begin());
}

}  // namespace

ScheduleModel build_schedule_model(const Instance& inst, Time horizon, const std::vector<std::vector<int>>* machines) {
    using namespace engine;
    ScheduleModel sm;
    auto& md = sm.model;
    md.horizon = horizon;
    const int nj = inst.num_jobs();
    const int nm = inst.num_machines();
    sm.ops.resize(static_cast<std::size_t>(nj));

    for (int j = 0; j < nj; ++j) {
        const auto& r = inst.route[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int s = r[i];
            OpVars ov;
            if (machines) {
                const int m = (*machines)[static_cast<std::size_t>(j)][i];
                if (m < 0 || m >= nm || inst.machines[static_cast<std::size_t>(m)].stage != s)
                    throw std::invalid_argument("machine assigned to operation " + op_name(inst, j, s) + " is not in its stage");
                ov.machines = {m};
            } else {
                ov.machines = inst.machines_of_stage(s);
            }
            const std::string name = op_name(inst, j, s);
            std::vector<Time> labels(ov.machines.begin(), ov.machines.end());
            ov.machine_choice = md.add_choice("machine " + name, labels);
            std::vector<Time> crews, times;
            for (int w = inst.workers_min[static_cast<std::size_t>(s)]; w <= inst.workers_max[static_cast<std::size_t>(s)]; ++w) {
                crews.push_back(w);
                times.push_back(inst.proc(j, s, w));
            }
            ov.worker_choice = md.add_choice("workers " + name, crews);

            TaskVar wb{"wb " + name};
            if (i == 0) wb.duration = Term::constant(0);
            else wb.free_duration = true;
            TaskVar pr{"pr " + name};
            pr.duration = Term::by(ov.worker_choice, times);
            TaskVar wa{"wa " + name};
            if (i + 1 == r.size()) wa.duration = Term::constant(0);
            else wa.free_duration = true;
            ov.wait_before = md.add_task(wb);
            ov.process = md.add_task(pr);
            ov.wait_after = md.add_task(wa);
            md.offsets.push_back({ov.process, ov.wait_before, Term::constant(0)});
            md.offsets.push_back({ov.wait_after, ov.process, Term::constant(0)});
            sm.ops[static_cast<std::size_t>(j)].push_back(std::move(ov));
        }
        auto& ops = sm.ops[static_cast<std::size_t>(j)];
        for (std::size_t i = 1; i < ops.size(); ++i) {
            const auto& a = ops[i - 1];
            const auto& b = ops[i];
            std::vector<Time> table;
            for (int m : a.machines)
                for (int n : b.machines) table.push_back(inst.transport_time(m, n));
            md.offsets.push_back({b.wait_before, a.wait_after, Term::by_pair(a.machine_choice, b.machine_choice, table)});
        }
        md.objective_tasks.push_back(ops.back().wait_after);
    }

    std::vector<Cumulative> machine_res(static_cast<std::size_t>(nm)), entry(static_cast<std::size_t>(nm)),
        exit(static_cast<std::size_t>(nm));
    for (int m = 0; m < nm; ++m) {
        const auto id = std::to_string(inst.machines[static_cast<std::size_t>(m)].id);
        machine_res[static_cast<std::size_t>(m)] = {"machine " + id, 1, true, {}};
        entry[static_cast<std::size_t>(m)] = {"entry buffer " + id, inst.buffer_in[static_cast<std::size_t>(m)], false, {}};
        exit[static_cast<std::size_t>(m)] = {"exit buffer " + id, inst.buffer_out[static_cast<std::size_t>(m)], false, {}};
    }
    Cumulative workers{"workers", inst.workers_total, false, {}};
    std::vector<Cumulative> stage_res(static_cast<std::size_t>(inst.num_stages()));
    for (int s = 0; s < inst.num_stages(); ++s)
        stage_res[static_cast<std::size_t>(s)] = {"stage " + std::to_string(inst.stage_ids[static_cast<std::size_t>(s)]),
                                                  static_cast<Time>(inst.machines_of_stage(s).size()), false, {}};

    for (int j = 0; j < nj; ++j) {
        const auto& r = inst.route[static_cast<std::size_t>(j)];
        const auto& ops = sm.ops[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const auto& ov = ops[i];
            for (std::size_t k = 0; k < ov.machines.size(); ++k) {
                const auto m = static_cast<std::size_t>(ov.machines[k]);
                const Literal on{ov.machine_choice, static_cast<int>(k)};
                machine_res[m].entries.push_back({ov.process, Term::constant(1), on});
                if (i > 0) entry[m].entries.push_back({ov.wait_before, Term::constant(1), on});
                if (i + 1 < ops.size()) exit[m].entries.push_back({ov.wait_after, Term::constant(1), on});
            }
            std::vector<Time> crews(md.choices[static_cast<std::size_t>(ov.worker_choice)].values);
            workers.entries.push_back({ov.process, Term::by(ov.worker_choice, crews), {}});
            stage_res[static_cast<std::size_t>(r[i])].entries.push_back({ov.process, Term::constant(1), {}});
        }
    }
    for (auto& c : machine_res)
        if (c.entries.size() > 1) md.resources.push_back(std::move(c));
    for (auto* v : {&entry, &exit})
        for (auto& c : *v)
            if (!c.entries.empty()) md.resources.push_back(std::move(c));
    md.resources.push_back(std::move(workers));
    // redundant: a stage never runs more operations than it has machines
    if (!machines)
        for (auto& c : stage_res)
            if (static_cast<Time>(c.entries.size()) > c.capacity) md.resources.push_back(std::move(c));
    return sm;
}

ScheduleModel build_full(const Instance& inst) {
    const Schedule seed = construct_schedule(inst);
    return build_schedule_model(inst, seed.makespan);
}

engine::Solution to_solution(const ScheduleModel& sm, const Instance& inst, const Schedule& sched) {
    engine::Solution sol;
    const auto nt = sm.model.tasks.size();
    sol.start.assign(nt, 0);
    sol.end.assign(nt, 0);
    sol.choice.assign(sm.model.choices.size(), -1);
    for (std::size_t j = 0; j < sm.ops.size(); ++j) {
        for (std::size_t i = 0; i < sm.ops[j].size(); ++i) {
            const auto& ov = sm.ops[j][i];
            const auto& op = sched.ops[j][i];
            sol.choice[static_cast<std::size_t>(ov.machine_choice)] = value_index(ov.machines, op.machine);
            sol.choice[static_cast<std::size_t>(ov.worker_choice)] =
                op.workers - inst.workers_min[static_cast<std::size_t>(inst.route[j][i])];
            const std::pair<int, const Interval*> parts[] = {
                {ov.wait_before, &op.wait_before}, {ov.process, &op.process}, {ov.wait_after, &op.wait_after}};
            for (const auto& [t, iv] : parts) {
                sol.start[static_cast<std::size_t>(t)] = iv->start;
                sol.end[static_cast<std::size_t>(t)] = iv->end;
            }
        }
    }
    sol.objective = engine::objective_of(sm.model, sol);
    return sol;
}

Schedule to_schedule(const ScheduleModel& sm, const Instance& inst, const engine::Solution& sol) {
    Schedule sched;
    sched.ops.resize(sm.ops.size());
    for (std::size_t j = 0; j < sm.ops.size(); ++j) {
        for (std::size_t i = 0; i < sm.ops[j].size(); ++i) {
            const auto& ov = sm.ops[j][i];
            OperationPlan op;
            op.machine = ov.machines[static_cast<std::size_t>(sol.choice[static_cast<std::size_t>(ov.machine_choice)])];
            op.workers = inst.workers_min[static_cast<std::size_t>(inst.route[j][i])] +
                         sol.choice[static_cast<std::size_t>(ov.worker_choice)];
            auto iv = [&](int t) { return Interval{sol.start[static_cast<std::size_t>(t)], sol.end[static_cast<std::size_t>(t)]}; };
            op.wait_before = iv(ov.wait_before);
            op.process = iv(ov.process);
            op.wait_after = iv(ov.wait_after);
            sched.ops[j].push_back(op);
        }
    }
    sched.makespan = makespan_of(sched);
    return sched;
}

Time serial_horizon(const Instance& inst) {
    Time h = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) {
        const auto& r = inst.route[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < r.size(); ++i) {
            h += inst.proc(j, r[i], inst.workers_min[static_cast<std::size_t>(r[i])]);
            if (i == 0) continue;
            Time worst = 0;
            for (int m : inst.machines_of_stage(r[i - 1]))
                for (int n : inst.machines_of_stage(r[i])) worst = std::max(worst, inst.transport_time(m, n));
            h += worst;
        }
    }
    return h;
}

SolveOutcome solve_full(const Instance& inst, const engine::SearchParams& params, bool warm_start) {
    engine::SearchParams p = params;
    std::optional<ScheduleModel> built;
    if (warm_start) {
        HeuristicOptions hopt;
        hopt.seed = params.seed;
        const Schedule seed = construct_schedule(inst, hopt);
        built = build_schedule_model(inst, seed.makespan);
        if (!p.hint) p.hint = to_solution(*built, inst, seed);
    } else {
        built = build_schedule_model(inst, serial_horizon(inst));
    }
    const ScheduleModel& sm = *built;
    SolveOutcome out;
    out.search = engine::solve(sm.model, p);
    if (out.search.incumbent) {
        Schedule s = to_schedule(sm, inst, *out.search.incumbent);
        const auto v = validate_schedule(inst, s);
        if (!v.empty()) throw std::logic_error("solver returned an invalid schedule: " + v.front().to_string());
        out.schedule = std::move(s);
    }
    return out;
}

}  // namespace hffs
