#pragma once

#include <optional>
#include <vector>

#include "hffs/engine.hpp"
#include "hffs/model.hpp"

namespace hffs {

// Engine handles of one operation.
struct OpVars {
    int machine_choice = -1;
    int worker_choice = -1;
    int wait_before = -1;
    int process = -1;
    int wait_after = -1;
    std::vector<int> machines;  // machine index per machine_choice value
};

struct ScheduleModel {
    engine::Model model;
    std::vector<std::vector<OpVars>> ops;  // [job][operation]
};

// Full model: per operation a machine choice, a crew choice and the
// wait/process/wait triple. The first wait of a job and its last wait are
// fixed to zero (an optimal schedule never needs them). When `machines` is
// given, every machine choice is a single fixed value. `horizon` bounds every
// end and must be at least the optimum.
ScheduleModel build_schedule_model(const Instance& inst, Time horizon,
                                   const std::vector<std::vector<int>>* machines = nullptr);

ScheduleModel build_full(const Instance& inst);

engine::Solution to_solution(const ScheduleModel& sm, const Instance& inst, const Schedule& sched);
Schedule to_schedule(const ScheduleModel& sm, const Instance& inst, const engine::Solution& sol);

struct SolveOutcome {
    engine::SearchResult search;
    std::optional<Schedule> schedule;  // validated
};

// Length of running the jobs one after another, each alone, with minimum
// crews and the slowest transports; every instance has a schedule this short.
Time serial_horizon(const Instance& inst);

// With warm_start the search is seeded with the constructive schedule, which
// also sets the horizon; without it the horizon is serial_horizon and the
// search may end with no schedule at all. Throws std::logic_error if a
// returned schedule fails validation.
SolveOutcome solve_full(const Instance& inst, const engine::SearchParams& params = {}, bool warm_start = true);

}  // namespace hffs
