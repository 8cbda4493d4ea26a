#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hffs {

using Time = std::int64_t;

inline constexpr Time kNoTransport = -1;

struct Machine {
    int id = 0;
    int stage = 0;  // dense stage index
};

// Hybrid flexible flowshop instance. Ids (job_ids, stage_ids, Machine::id) are
// the external identifiers used by the JSON format; every other field is
// indexed densely (job index, stage index, machine index).
struct Instance {
    std::vector<int> job_ids;
    std::vector<int> stage_ids;  // global stage order
    std::vector<Machine> machines;
    std::vector<std::vector<int>> route;  // per job: eligible stage indices, ascending
    std::vector<int> buffer_in;           // per machine, R-
    std::vector<int> buffer_out;          // per machine, R+
    std::vector<Time> transport;          // |M| x |M|, kNoTransport when undefined
    int workers_total = 0;
    std::vector<int> workers_min;  // per stage
    std::vector<int> workers_max;  // per stage
    // proc_time[j][s][w - workers_min[s]]; empty when stage s is not in route[j]
    std::vector<std::vector<std::vector<Time>>> proc_time;

    int num_jobs() const { return static_cast<int>(job_ids.size()); }
    int num_stages() const { return static_cast<int>(stage_ids.size()); }
    int num_machines() const { return static_cast<int>(machines.size()); }

    Time transport_time(int from, int to) const {
        return transport[static_cast<std::size_t>(from) * machines.size() + static_cast<std::size_t>(to)];
    }
    void set_transport(int from, int to, Time t) {
        if (transport.size() != machines.size() * machines.size())
            transport.assign(machines.size() * machines.size(), kNoTransport);
        transport[static_cast<std::size_t>(from) * machines.size() + static_cast<std::size_t>(to)] = t;
    }

    // p_{jsw}; w must lie in the stage's worker window.
    Time proc(int job, int stage, int workers) const {
        return proc_time[job][stage][workers - workers_min[stage]];
    }
    bool eligible(int job, int stage) const { return !proc_time[job][stage].empty(); }

    std::vector<int> machines_of_stage(int stage) const;
    int num_operations() const;
    int job_index(int id) const;    // -1 when unknown
    int stage_index(int id) const;  // -1 when unknown
    int machine_index(int id) const;
};

struct Interval {
    Time start = 0;
    Time end = 0;

    Time length() const { return end - start; }
    bool operator==(const Interval&) const = default;
};

struct OperationPlan {
    int machine = -1;  // machine index
    int workers = 0;
    Interval wait_before;
    Interval process;
    Interval wait_after;

    bool operator==(const OperationPlan&) const = default;
};

// ops[j][i] describes the i-th eligible stage of job j.
struct Schedule {
    std::vector<std::vector<OperationPlan>> ops;
    Time makespan = 0;

    bool operator==(const Schedule&) const = default;
};

struct Violation {
    std::string kind;   // e.g. "buffer_in", "transport"
    std::string where;  // job/stage/machine locus using external ids
    std::string detail;

    std::string to_string() const;
};

std::vector<Violation> validate_instance(const Instance& inst);

// Checks every constraint of the full model against a complete schedule.
std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched);

// Maximum end of the wait_after intervals; throws std::invalid_argument when
// the schedule holds no operation.
Time makespan_of(const Schedule& sched);

}  // namespace hffs
