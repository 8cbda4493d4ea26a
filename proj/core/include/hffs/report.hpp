#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hffs/io.hpp"

namespace hffs {

// Results of one solution method, one row per instance.
struct MethodResults {
    std::string method;
    std::vector<ResultRow> rows;
};

// One aggregate value, e.g. {"jobs", "20", "cp_real_gap", 9.30}.
struct ReportCell {
    std::string table;
    std::string key;
    std::string column;
    double value = 0;
};

// Instance names decide the tables: "J_k" rows (first group) feed "jobs" and
// "impact", "J_S_v" rows (second group) feed "stages" and "variant". Other
// names are ignored.
//
// jobs:    best_lb over all rows; <m>_lb, <m>_ub, <m>_original_gap,
//          <m>_real_gap over rows with an upper bound; <m>_solved
// impact:  <m>_diff = (avg best_lb - avg <m>_lb) / avg best_lb, in percent
// stages, variant: <m>_gap1 over rows every method solved, <m>_gap2 over
//          rows <m> solved (original gaps); <m>_solved
// Averages with no rows behind them are left out. Throws std::invalid_argument
// for no input or a repeated instance within one method.
std::vector<ReportCell> aggregate(const std::vector<MethodResults>& methods);

// Same layout as the published aggregates: table,key,column,value.
std::string cells_to_csv(const std::vector<ReportCell>& cells);
// Human-readable tables.
std::string cells_to_text(const std::vector<ReportCell>& cells);

// Two decimals, halves away from zero (values are nudged by 1e-9 first so a
// float just below an exact half still rounds up).
std::string fixed2(double v);

}  // namespace hffs
