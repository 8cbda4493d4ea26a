#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hffs/bounds.hpp"
#include "hffs/lbbd.hpp"
#include "hffs/model.hpp"

namespace hffs {

// Malformed input: parse errors, wrong types, unknown or missing fields, and
// schedules that refer to ids the instance does not know.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance JSON:
//   {"jobs": [ids], "stages": [ids in stage order], "machines": [{"id","stage"}],
//    "eligible_stages": {"job": [stage ids]}, "buffer_in": {"machine": n},
//    "buffer_out": {...}, "transport": [{"from","to","t"}], "workers_total": W,
//    "workers_min": {"stage": n}, "workers_max": {...},
//    "proc_time": [{"job","stage","w","p"}]}
// Structural problems throw IoError; semantic checks are validate_instance's.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

// Schedule JSON, operations keyed "job:stage" by external ids:
//   {"machine_of": {op: machine id}, "workers_of": {op: w},
//    "intervals": {op: {"wb": [s, e], "pr": [s, e], "wa": [s, e]}}, "makespan": T}
Schedule schedule_from_json(const Instance& inst, const std::string& text);
std::string schedule_to_json(const Instance& inst, const Schedule& sched);

std::string bounds_to_json(const BoundReport& rep);

// Wall-clock fields are left out unless timings is set, so that equal runs
// give equal bytes.
std::string runlog_to_json(const RunLog& log, bool timings = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// One row of the results CSV.
struct ResultRow {
    std::string instance;
    Time best_lb = 0;
    Time lb = 0;
    std::optional<Time> ub;  // empty cell when nothing was found
    int iterations = 0;
    long nodes = 0;
    double wall_time = 0;
    std::string status;
};

extern const char* const kResultsHeader;

// Gap columns are derived from best_lb, lb and ub, two decimals.
std::string to_csv_line(const ResultRow& row);
// Header line required; blank lines skipped. Throws IoError.
std::vector<ResultRow> parse_results_csv(const std::string& text);

}  // namespace hffs
