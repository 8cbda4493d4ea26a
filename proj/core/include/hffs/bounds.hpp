#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hffs/model.hpp"

namespace hffs {

struct BoundReport {
    Time lb1 = 0;
    Time lb2 = 0;
    Time lb3 = 0;
    std::optional<Time> lb4, lb5, lb6, lb7;
    Time lb8 = 0;
    Time best = 0;
    std::vector<std::vector<Time>> relaxed_times;  // [job][stage], 0 for skipped stages
    std::vector<Time> transport_min;               // per job
    // [job][stage] -> (sum of relaxed times before the stage, transport up to the stage)
    std::vector<std::vector<std::pair<Time, Time>>> per_stage_head;
};

// Exact non-negative fraction; den > 0.
struct Fraction {
    Time num = 0;
    Time den = 1;
};

// p̄[j][s] = min_w p_{jsw}; 0 where s is skipped.
std::vector<std::vector<Time>> relaxed_times(const Instance& inst);

Time lb1_stage_load(const Instance& inst);

// Cheapest machine path through the job's eligible stages (layered DP).
// Throws std::invalid_argument naming the machine pair when a transport time is
// missing.
Time shortest_transport(const Instance& inst, int job);

// Per eligible stage of the job, the cheapest transport cost of reaching it.
std::vector<Time> transport_prefix(const Instance& inst, int job);

Time lb2_job_path(const Instance& inst);
Time lb3_stage_head(const Instance& inst);

// Two-stage bounds over consecutive stages, split by machine ratio. lb4/lb5
// come from pairs with |M_s| >= |M_s+1|, lb6/lb7 from the others.
struct TwoStageBounds {
    std::optional<Time> lb4, lb5, lb6, lb7;
};
TwoStageBounds two_stage_bounds(const Instance& inst);
std::optional<Time> lb_two_stage(const Instance& inst);

// Optimum of the worker-splitting LP, before rounding.
Fraction lb8_fraction(const Instance& inst);
Time lb8_malleable(const Instance& inst);

BoundReport best_lb(const Instance& inst);

}  // namespace hffs
