#include "hffs/master.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hffs/bounds.hpp"
#include "hffs/heuristic.hpp"

namespace hffs {

namespace {

// Jobs run one after another, each on its worst transports: any assignment
// fits, so no optimum of the relaxation exceeds this.
Time serial_horizon(const Instance& inst, const std::vector<std::vector<Time>>& pbar) {
    Time total = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) {
        const auto& r = inst.route[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < r.size(); ++i) {
            total += pbar[static_cast<std::size_t>(j)][static_cast<std::size_t>(r[i])];
            if (i == 0) continue;
            Time worst = 0;
            for (int m : inst.machines_of_stage(r[i - 1]))
                for (int n : inst.machines_of_stage(r[i])) worst = std::max(worst, inst.transport_time(m, n));
            total += worst;
        }
    }
    return total;
}

}  // namespace

MasterModel build_master(const Instance& inst, const std::vector<BendersCut>& cuts, Time lb_floor) {
    using namespace engine;
    MasterModel mm;
    auto& md = mm.model;
    const auto pbar = relaxed_times(inst);
    const int nj = inst.num_jobs();
    const int nm = inst.num_machines();

    Time horizon = std::max(serial_horizon(inst, pbar), lb_floor);
    for (const auto& c : cuts)
        if (c.zeta < kInf) horizon = std::max(horizon, c.zeta);
    md.horizon = horizon;
    md.objective_floor = lb_floor;

    std::vector<Cumulative> machine_res(static_cast<std::size_t>(nm));
    for (int m = 0; m < nm; ++m)
        machine_res[static_cast<std::size_t>(m)] = {"machine " + std::to_string(inst.machines[static_cast<std::size_t>(m)].id), 1, true, {}};
    std::vector<Cumulative> stage_res(static_cast<std::size_t>(inst.num_stages()));
    for (int s = 0; s < inst.num_stages(); ++s)
        stage_res[static_cast<std::size_t>(s)] = {"stage " + std::to_string(inst.stage_ids[static_cast<std::size_t>(s)]),
                                                  static_cast<Time>(inst.machines_of_stage(s).size()), false, {}};
    Cumulative workers{"workers", inst.workers_total, false, {}};

    mm.machine_choice.resize(static_cast<std::size_t>(nj));
    mm.task.resize(static_cast<std::size_t>(nj));
    mm.machines.resize(static_cast<std::size_t>(nj));
    for (int j = 0; j < nj; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const auto& r = inst.route[ju];
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int s = r[i];
            const auto su = static_cast<std::size_t>(s);
            const std::string name = std::to_string(inst.job_ids[ju]) + ":" + std::to_string(inst.stage_ids[su]);
            const auto ms = inst.machines_of_stage(s);
            const int c = md.add_choice("machine " + name, std::vector<Time>(ms.begin(), ms.end()));
            TaskVar t{"op " + name};
            t.duration = Term::constant(pbar[ju][su]);
            const int task = md.add_task(t);
            for (std::size_t k = 0; k < ms.size(); ++k)
                machine_res[static_cast<std::size_t>(ms[k])].entries.push_back({task, Term::constant(1), {c, static_cast<int>(k)}});
            stage_res[su].entries.push_back({task, Term::constant(1), {}});
            workers.entries.push_back({task, Term::constant(inst.workers_min[su]), {}});
            if (i > 0) {
                const auto& prev = mm.machines[ju].back();
                std::vector<Time> table;
                for (int m : prev)
                    for (int n : ms) table.push_back(inst.transport_time(m, n));
                md.precedences.push_back({mm.task[ju].back(), task, Term::by_pair(mm.machine_choice[ju].back(), c, table)});
            }
            mm.machine_choice[ju].push_back(c);
            mm.task[ju].push_back(task);
            mm.machines[ju].push_back(ms);
        }
        md.objective_tasks.push_back(mm.task[ju].back());
    }
    for (auto& c : machine_res)
        if (c.entries.size() > 1) md.resources.push_back(std::move(c));
    for (auto& c : stage_res)
        if (static_cast<Time>(c.entries.size()) > c.capacity) md.resources.push_back(std::move(c));
    md.resources.push_back(std::move(workers));

    for (const auto& cut : cuts) {
        if (cut.fingerprint.size() != static_cast<std::size_t>(nj))
            throw std::invalid_argument("cut does not cover every job");
        ConditionalBound cb;
        cb.zeta = cut.zeta;
        for (int j = 0; j < nj; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            if (cut.fingerprint[ju].size() != mm.machine_choice[ju].size())
                throw std::invalid_argument("cut does not cover every operation");
            for (std::size_t i = 0; i < mm.machine_choice[ju].size(); ++i) {
                const auto& vals = mm.machines[ju][i];
                const auto it = std::find(vals.begin(), vals.end(), cut.fingerprint[ju][i]);
                if (it == vals.end()) throw std::invalid_argument("cut uses a machine outside the operation's stage");
                cb.when.push_back({mm.machine_choice[ju][i], static_cast<int>(it - vals.begin())});
            }
        }
        md.conditionals.push_back(std::move(cb));
    }
    return mm;
}

MasterSolution solve_master(const Instance& inst, const std::vector<BendersCut>& cuts, Time lb_floor,
                            const engine::SearchParams& params) {
    const MasterModel mm = build_master(inst, cuts, lb_floor);
    engine::SearchParams p = params;
    if (!p.hint) {
        // Constructive schedule as a starting point; the engine drops it when
        // a cut excludes its assignment.
        HeuristicOptions hopt;
        hopt.seed = params.seed;
        hopt.random_orders = 0;
        const Schedule s = construct_schedule(inst, hopt);
        engine::Solution h;
        h.start.assign(mm.model.tasks.size(), 0);
        h.end.assign(mm.model.tasks.size(), 0);
        h.choice.assign(mm.model.choices.size(), 0);
        for (std::size_t j = 0; j < mm.task.size(); ++j)
            for (std::size_t i = 0; i < mm.task[j].size(); ++i) {
                const auto t = static_cast<std::size_t>(mm.task[j][i]);
                const auto& op = s.ops[j][i];
                const auto& vals = mm.machines[j][i];
                h.choice[static_cast<std::size_t>(mm.machine_choice[j][i])] =
                    static_cast<int>(std::find(vals.begin(), vals.end(), op.machine) - vals.begin());
                h.start[t] = op.process.start;
                h.end[t] = op.process.start + mm.model.tasks[t].duration.table[0];
            }
        h.objective = engine::objective_of(mm.model, h);
        p.hint = std::move(h);
    }
    const auto res = engine::solve(mm.model, p);
    MasterSolution out;
    out.status = res.status;
    out.lower_bound = res.lower_bound;
    out.nodes = res.nodes;
    out.seconds = res.seconds;
    if (res.incumbent) {
        out.objective = res.incumbent->objective;
        out.machine_seq.resize(mm.task.size());
        for (std::size_t j = 0; j < mm.task.size(); ++j)
            for (std::size_t i = 0; i < mm.task[j].size(); ++i)
                out.machine_seq[j].push_back(
                    mm.machines[j][i][static_cast<std::size_t>(res.incumbent->choice[static_cast<std::size_t>(mm.machine_choice[j][i])])]);
    }
    return out;
}

}  // namespace hffs
