#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hffs/master.hpp"
#include "hffs/model.hpp"

namespace hffs {

struct LbbdBudget {
    long master_nodes = -1;  // < 0: unlimited
    double master_time = -1;  // seconds, < 0: unlimited
    long sub_nodes = -1;
    double sub_time = -1;
    double total_time = -1;
    int max_iterations = -1;
    // A subproblem that runs out of budget gets twice the budget next time,
    // at most this many times.
    int max_doublings = 3;
};

struct IterationLog {
    int k = 0;
    Time master_lb = 0;
    std::uint64_t jstar_hash = 0;
    std::optional<Time> zeta;     // subproblem incumbent
    std::string sub_status;       // optimal, feasible, infeasible, unknown, skipped
    std::string cut;              // optimality, exclusion or none
    Time lb = 0;
    std::optional<Time> ub;
    long master_nodes = 0;
    long sub_nodes = 0;
    double master_seconds = 0;
    double sub_seconds = 0;
};

struct RunLog {
    std::vector<IterationLog> iterations;
    std::string status;  // optimal, feasible, unknown
    bool stalled = false;  // stopped on a repeated assignment at full budget
    Time best_lb = 0;
    Time lb = 0;
    std::optional<Time> ub;
    std::optional<Schedule> schedule;  // validated
    long nodes = 0;
    double seconds = 0;
};

// FNV-1a (64-bit) over the external machine ids of the assignment, job by
// job, each id as 4 little-endian bytes, with a 0xff byte closing every job.
std::uint64_t assignment_hash(const Instance& inst, const MachineSeq& seq);

RunLog run_lbbd(const Instance& inst, const LbbdBudget& budget, std::uint64_t seed = 0);

// (original, real) gaps in percent. Throws std::invalid_argument when ub <= 0.
std::pair<double, double> gaps(Time best_lb, Time lb, Time ub);

}  // namespace hffs
