#pragma once

#include <cstdint>
#include <vector>

#include "hffs/model.hpp"

namespace hffs {

struct HeuristicOptions {
    int random_orders = 4;  // shuffled job orders tried after the fixed ones
    std::uint64_t seed = 0;
    // Optional machine index per [job][operation]; free choice when empty.
    std::vector<std::vector<int>> machines;
};

// Inserts jobs one at a time, each operation at the (machine, crew, start)
// finishing first, with waits split between exit and entry buffers so that
// capacities hold. A job that cannot be completed is restarted one time unit
// later; running alone it never waits, so the result is always feasible.
// Several job orders are tried and the shortest schedule is returned.
Schedule construct_schedule(const Instance& inst, const HeuristicOptions& opt = {});

}  // namespace hffs
