#pragma once

#include <optional>

#include "hffs/engine.hpp"
#include "hffs/full_model.hpp"
#include "hffs/master.hpp"
#include "hffs/model.hpp"

namespace hffs {

// Crews and timing for fixed machines. Throws std::invalid_argument when a
// machine does not belong to its operation's stage.
ScheduleModel build_sub(const Instance& inst, const MachineSeq& machines, Time horizon);

struct SubResult {
    engine::Status status = engine::Status::Unknown;
    Time zeta = 0;         // incumbent makespan when a schedule exists
    Time lower_bound = 0;  // proven for this assignment
    std::optional<Schedule> schedule;  // validated against the full model
    long nodes = 0;
    double seconds = 0;
};

SubResult solve_sub(const Instance& inst, const MachineSeq& machines, const engine::SearchParams& params = {});

}  // namespace hffs
