#include "hffs/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace hffs {

std::vector<int> Instance::machines_of_stage(int stage) const {
    std::vector<int> out;
    for (int m = 0; m < num_machines(); ++m)
        if (machines[m].stage == stage) out.push_back(m);
    return out;
}

int Instance::num_operations() const {
    int n = 0;
    for (const auto& r : route) n += static_cast<int>(r.size());
    return n;
}

namespace {

int find_id(const std::vector<int>& ids, int id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
}

std::string job_locus(const Instance& inst, int j) {
    return "job " + std::to_string(inst.job_ids[j]);
}

std::string op_locus(const Instance& inst, int j, int s) {
    return "job " + std::to_string(inst.job_ids[j]) + ", stage " + std::to_string(inst.stage_ids[s]);
}

std::string machine_locus(const Instance& inst, int m) {
    return "machine " + std::to_string(inst.machines[m].id);
}

Time ceil_div(Time a, Time b) { return (a + b - 1) / b; }

struct Usage {
    Time time;
    int delta;
};

// Peak of a half-open interval usage profile; returns the first time point at
// which the running total exceeds `capacity`, or -1.
Time first_overload(std::vector<Usage> events, long capacity, long* peak) {
    std::sort(events.begin(), events.end(), [](const Usage& a, const Usage& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.delta < b.delta;  // releases first
    });
    long level = 0;
    *peak = 0;
    Time at = -1;
    for (const auto& e : events) {
        level += e.delta;
        if (level > *peak) *peak = level;
        if (level > capacity && at < 0) at = e.time;
    }
    return at;
}

}  // namespace

int Instance::job_index(int id) const { return find_id(job_ids, id); }
int Instance::stage_index(int id) const { return find_id(stage_ids, id); }

int Instance::machine_index(int id) const {
    for (int m = 0; m < num_machines(); ++m)
        if (machines[m].id == id) return m;
    return -1;
}

std::string Violation::to_string() const {
    return kind + " [" + where + "]: " + detail;
}

std::vector<Violation> validate_instance(const Instance& inst) {
    std::vector<Violation> out;
    auto add = [&](std::string kind, std::string where, std::string detail) {
        out.push_back({std::move(kind), std::move(where), std::move(detail)});
    };

    const int nj = inst.num_jobs();
    const int ns = inst.num_stages();
    const int nm = inst.num_machines();

    auto unique_ids = [&](const std::vector<int>& ids, const char* what) {
        std::set<int> seen(ids.begin(), ids.end());
        if (seen.size() != ids.size()) add("ids", what, "duplicate identifiers");
    };
    unique_ids(inst.job_ids, "jobs");
    unique_ids(inst.stage_ids, "stages");
    {
        std::vector<int> ids;
        for (const auto& m : inst.machines) ids.push_back(m.id);
        unique_ids(ids, "machines");
    }
    if (nj == 0) add("jobs", "instance", "no jobs");
    if (ns == 0) add("stages", "instance", "no stages");

    bool shape_ok = static_cast<int>(inst.route.size()) == nj &&
                    static_cast<int>(inst.proc_time.size()) == nj &&
                    static_cast<int>(inst.buffer_in.size()) == nm &&
                    static_cast<int>(inst.buffer_out.size()) == nm &&
                    static_cast<int>(inst.workers_min.size()) == ns &&
                    static_cast<int>(inst.workers_max.size()) == ns &&
                    inst.transport.size() == static_cast<std::size_t>(nm) * static_cast<std::size_t>(nm);
    if (!shape_ok) {
        add("shape", "instance", "per-job, per-stage or per-machine tables have the wrong size");
        return out;
    }

    for (int m = 0; m < nm; ++m) {
        if (inst.machines[m].stage < 0 || inst.machines[m].stage >= ns) {
            add("machine_stage", machine_locus(inst, m), "unknown stage");
            return out;
        }
        if (inst.buffer_in[m] < 0) add("buffer_in", machine_locus(inst, m), "negative capacity");
        if (inst.buffer_out[m] < 0) add("buffer_out", machine_locus(inst, m), "negative capacity");
    }
    for (int s = 0; s < ns; ++s) {
        if (inst.machines_of_stage(s).empty())
            add("stage_machines", "stage " + std::to_string(inst.stage_ids[s]), "no machine");
    }

    if (inst.workers_total < 1) add("workers_total", "instance", "W must be positive");
    std::vector<bool> window_ok(ns, true);
    for (int s = 0; s < ns; ++s) {
        const int lo = inst.workers_min[s];
        const int hi = inst.workers_max[s];
        if (lo < 1 || lo > hi || hi > inst.workers_total) {
            std::ostringstream d;
            d << "worker window [" << lo << ", " << hi << "] not within [1, " << inst.workers_total << "]";
            add("workers_window", "stage " + std::to_string(inst.stage_ids[s]), d.str());
            window_ok[s] = false;
        }
    }

    for (int j = 0; j < nj; ++j) {
        const auto& r = inst.route[j];
        if (r.empty()) add("route", job_locus(inst, j), "no eligible stage");
        bool route_ok = true;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] < 0 || r[i] >= ns) {
                add("route", job_locus(inst, j), "unknown stage index");
                route_ok = false;
            } else if (i > 0 && r[i] <= r[i - 1]) {
                add("route", job_locus(inst, j), "eligible stages do not follow the stage order");
                route_ok = false;
            }
        }
        if (!route_ok) continue;
        if (static_cast<int>(inst.proc_time[j].size()) != ns) {
            add("proc_time", job_locus(inst, j), "processing table must have one row per stage");
            continue;
        }
        for (int s = 0; s < ns; ++s) {
            const bool in_route = std::find(r.begin(), r.end(), s) != r.end();
            const auto& row = inst.proc_time[j][s];
            if (!in_route) {
                if (!row.empty()) add("proc_time", op_locus(inst, j, s), "times given for a skipped stage");
                continue;
            }
            if (!window_ok[s]) continue;
            const int lo = inst.workers_min[s];
            const int hi = inst.workers_max[s];
            if (static_cast<int>(row.size()) != hi - lo + 1) {
                add("proc_time", op_locus(inst, j, s), "missing processing time for some worker count");
                continue;
            }
            for (int w = lo; w <= hi; ++w) {
                if (row[w - lo] < 1) {
                    add("proc_time", op_locus(inst, j, s) + ", w " + std::to_string(w), "processing time must be positive");
                }
            }
            // Work inequality p_w >= ceil(p_1 / w); only checkable when a single
            // worker is admissible.
            if (lo == 1) {
                const Time p1 = row[0];
                for (int w = 2; w <= hi; ++w) {
                    if (row[w - lo] < ceil_div(p1, w)) {
                        std::ostringstream d;
                        d << "p=" << row[w - lo] << " < ceil(" << p1 << "/" << w << ")";
                        add("eq_work", op_locus(inst, j, s) + ", w " + std::to_string(w), d.str());
                    }
                }
            }
        }
        for (std::size_t i = 1; i < r.size(); ++i) {
            for (int m : inst.machines_of_stage(r[i - 1])) {
                for (int n : inst.machines_of_stage(r[i])) {
                    if (inst.transport_time(m, n) < 0) {
                        add("transport", machine_locus(inst, m) + " -> " + machine_locus(inst, n),
                            "missing transport time for a pair used by " + job_locus(inst, j));
                    }
                }
            }
        }
    }
    // Only report each missing pair once.
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.kind, a.where) < std::tie(b.kind, b.where);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Violation& a, const Violation& b) {
                              return a.kind == "transport" && b.kind == "transport" && a.where == b.where;
                          }),
              out.end());
    return out;
}

std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched) {
    std::vector<Violation> out;
    auto add = [&](std::string kind, std::string where, std::string detail) {
        out.push_back({std::move(kind), std::move(where), std::move(detail)});
    };

    const int nj = inst.num_jobs();
    if (static_cast<int>(sched.ops.size()) != nj) {
        add("shape", "schedule", "job count differs from the instance");
        return out;
    }
    for (int j = 0; j < nj; ++j) {
        if (sched.ops[j].size() != inst.route[j].size()) {
            add("shape", job_locus(inst, j), "operation count differs from the eligible stages");
            return out;
        }
    }

    const int nm = inst.num_machines();
    std::vector<std::vector<Interval>> on_machine(nm);
    std::vector<std::vector<Usage>> entry(nm), exit(nm);
    std::vector<Usage> workers;
    bool structurally_ok = true;

    for (int j = 0; j < nj; ++j) {
        const auto& r = inst.route[j];
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int s = r[i];
            const auto& op = sched.ops[j][i];
            const std::string where = op_locus(inst, j, s);
            if (op.machine < 0 || op.machine >= nm || inst.machines[op.machine].stage != s) {
                add("machine", where, "assigned machine does not belong to the stage");
                structurally_ok = false;
                continue;
            }
            if (op.workers < inst.workers_min[s] || op.workers > inst.workers_max[s]) {
                add("workers", where, "worker count " + std::to_string(op.workers) + " outside the stage window");
                structurally_ok = false;
                continue;
            }
            for (const auto* iv : {&op.wait_before, &op.process, &op.wait_after}) {
                if (iv->end < iv->start || iv->start < 0) {
                    add("interval", where, "interval with negative length or negative start");
                    structurally_ok = false;
                }
            }
            if (op.wait_before.end != op.process.start)
                add("chain", where, "process does not start when wait_before ends");
            if (op.process.end != op.wait_after.start)
                add("chain", where, "wait_after does not start when process ends");
            const Time p = inst.proc(j, s, op.workers);
            if (op.process.length() != p) {
                std::ostringstream d;
                d << "process length " << op.process.length() << " != p=" << p << " for " << op.workers << " workers";
                add("duration", where, d.str());
            }
            if (i > 0) {
                const auto& prev = sched.ops[j][i - 1];
                if (prev.machine >= 0 && prev.machine < nm) {
                    const Time t = inst.transport_time(prev.machine, op.machine);
                    if (t < 0) {
                        add("transport", where, "no transport time from " + machine_locus(inst, prev.machine));
                    } else if (op.wait_before.start != prev.wait_after.end + t) {
                        std::ostringstream d;
                        d << "wait_before starts at " << op.wait_before.start << " but wait_after at "
                          << machine_locus(inst, prev.machine) << " ends at " << prev.wait_after.end
                          << " and transport is " << t;
                        add("transport", where, d.str());
                    }
                    if (prev.process.end > op.process.start)
                        add("stage_order", where, "process starts before the previous stage finishes");
                }
            }
            if (op.process.length() > 0) {
                on_machine[op.machine].push_back(op.process);
                workers.push_back({op.process.start, op.workers});
                workers.push_back({op.process.end, -op.workers});
            }
            if (op.wait_before.length() > 0) {
                entry[op.machine].push_back({op.wait_before.start, 1});
                entry[op.machine].push_back({op.wait_before.end, -1});
            }
            if (op.wait_after.length() > 0) {
                exit[op.machine].push_back({op.wait_after.start, 1});
                exit[op.machine].push_back({op.wait_after.end, -1});
            }
        }
    }

    for (int m = 0; m < nm; ++m) {
        auto& ivs = on_machine[m];
        std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
            return std::pair(a.start, a.end) < std::pair(b.start, b.end);
        });
        for (std::size_t k = 1; k < ivs.size(); ++k) {
            if (ivs[k].start < ivs[k - 1].end) {
                std::ostringstream d;
                d << "process intervals [" << ivs[k - 1].start << "," << ivs[k - 1].end << ") and [" << ivs[k].start
                  << "," << ivs[k].end << ") overlap";
                add("no_overlap", machine_locus(inst, m), d.str());
            }
        }
        long peak = 0;
        if (Time at = first_overload(entry[m], inst.buffer_in[m], &peak); at >= 0) {
            std::ostringstream d;
            d << "entry buffer holds " << peak << " jobs (capacity " << inst.buffer_in[m] << ") at t=" << at;
            add("buffer_in", machine_locus(inst, m), d.str());
        }
        if (Time at = first_overload(exit[m], inst.buffer_out[m], &peak); at >= 0) {
            std::ostringstream d;
            d << "exit buffer holds " << peak << " jobs (capacity " << inst.buffer_out[m] << ") at t=" << at;
            add("buffer_out", machine_locus(inst, m), d.str());
        }
    }
    long peak = 0;
    if (Time at = first_overload(workers, inst.workers_total, &peak); at >= 0) {
        std::ostringstream d;
        d << peak << " workers busy (W=" << inst.workers_total << ") at t=" << at;
        add("workers_total", "instance", d.str());
    }

    if (structurally_ok) {
        Time last = 0;
        for (const auto& ops : sched.ops)
            for (const auto& op : ops) last = std::max(last, op.wait_after.end);
        if (last != sched.makespan) {
            add("makespan", "schedule",
                "stored makespan " + std::to_string(sched.makespan) + " but last interval ends at " + std::to_string(last));
        }
    }
    return out;
}

Time makespan_of(const Schedule& sched) {
    bool any = false;
    Time last = 0;
    for (const auto& ops : sched.ops) {
        for (const auto& op : ops) {
            any = true;
            last = std::max(last, op.wait_after.end);
        }
    }
    if (!any) throw std::invalid_argument("makespan_of: schedule has no operation");
    return last;
}

}  // namespace hffs
