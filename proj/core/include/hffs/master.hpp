#pragma once

#include <vector>

#include "hffs/engine.hpp"
#include "hffs/model.hpp"

namespace hffs {

// Machine index per [job][operation], the assignment a cut refers to.
using MachineSeq = std::vector<std::vector<int>>;

struct BendersCut {
    MachineSeq fingerprint;
    Time zeta = 1;  // engine::kInf excludes the assignment
};

struct MasterSolution {
    MachineSeq machine_seq;  // empty when no incumbent was found
    Time lower_bound = 0;
    Time objective = 0;  // incumbent value
    engine::Status status = engine::Status::Unknown;
    long nodes = 0;
    double seconds = 0;
};

struct MasterModel {
    engine::Model model;
    std::vector<std::vector<int>> machine_choice;  // [job][operation]
    std::vector<std::vector<int>> task;            // [job][operation]
    std::vector<std::vector<std::vector<int>>> machines;  // value index -> machine index
};

// Relaxation: relaxed processing times, transport as a minimum delay, no
// buffers, fixed minimum crews; objective floor lb_floor and one conditional
// bound per cut.
MasterModel build_master(const Instance& inst, const std::vector<BendersCut>& cuts, Time lb_floor);

// status Unknown with an empty machine_seq when the budget ran out before any
// assignment was found; Infeasible when the cuts exclude every assignment.
MasterSolution solve_master(const Instance& inst, const std::vector<BendersCut>& cuts, Time lb_floor,
                            const engine::SearchParams& params = {});

}  // namespace hffs
