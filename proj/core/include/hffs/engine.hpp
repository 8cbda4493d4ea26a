#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hffs/model.hpp"

// Small interval-scheduling branch and bound: discrete choices with at most 64
// values, interval tasks whose duration is fixed, picked from a menu by a
// choice, or free within a range, exact offsets and precedences between task
// ends and starts, cumulative resources and conditional makespan bounds.
namespace hffs::engine {

inline constexpr Time kInf = std::numeric_limits<Time>::max() / 4;
inline constexpr int kMaxValues = 64;

struct ChoiceVar {
    std::string name;
    std::vector<Time> values;  // labels only; constraints refer to value indices
};

// (choice == value index). choice < 0 means "always true".
struct Literal {
    int choice = -1;
    int index = 0;
};

// A time value that is constant or looked up by one or two choices.
struct Term {
    int a = -1;
    int b = -1;
    std::vector<Time> table;  // size 1, |a| or |a|*|b| (row-major on a)

    static Term constant(Time v) { return Term{-1, -1, {v}}; }
    static Term by(int choice, std::vector<Time> per_value) { return Term{choice, -1, std::move(per_value)}; }
    static Term by_pair(int ca, int cb, std::vector<Time> table) { return Term{ca, cb, std::move(table)}; }
};

struct TaskVar {
    std::string name;
    Time est = 0;
    Time lct = kInf;
    // Duration: fixed (constant term), a menu (term over one choice) or free in
    // [free_min, free_max] when free_duration is set.
    Term duration = Term::constant(0);
    bool free_duration = false;
    Time free_min = 0;
    Time free_max = kInf;
};

// start(after) == end(before) + delta
struct OffsetLink {
    int after = -1;
    int before = -1;
    Term delta = Term::constant(0);
};

// end(before) + delta <= start(after)
struct Precedence {
    int before = -1;
    int after = -1;
    Term delta = Term::constant(0);
};

struct ResourceEntry {
    int task = -1;
    Term weight = Term::constant(1);
    Literal active;  // entry counts only when the literal holds
};

// Sum of weights of active entries covering any time point <= capacity. A
// zero-length task covers nothing. Disjunctive groups are capacity-1
// resources with unit weights flagged so pairwise ordering is also used.
struct Cumulative {
    std::string name;
    Time capacity = 1;
    bool disjunctive = false;
    std::vector<ResourceEntry> entries;
};

// If every literal holds then objective >= zeta; zeta == kInf forbids the
// combination outright.
struct ConditionalBound {
    std::vector<Literal> when;
    Time zeta = kInf;
};

struct Model {
    std::vector<ChoiceVar> choices;
    std::vector<TaskVar> tasks;
    std::vector<OffsetLink> offsets;
    std::vector<Precedence> precedences;
    std::vector<Cumulative> resources;
    std::vector<ConditionalBound> conditionals;
    // objective = max(objective_floor, max end of objective_tasks, matched conditional zetas)
    std::vector<int> objective_tasks;
    Time objective_floor = 0;
    Time horizon = kInf;  // every end is at most this

    int add_choice(std::string name, std::vector<Time> values);
    int add_task(TaskVar t);
};

struct Solution {
    std::vector<Time> start;
    std::vector<Time> end;
    std::vector<int> choice;  // chosen value index per choice
    Time objective = 0;

    bool operator==(const Solution&) const = default;
};

enum class Status { Optimal, Feasible, Infeasible, Unknown };
const char* to_string(Status s);

struct SearchParams {
    long node_limit = -1;     // < 0: unlimited; deterministic
    double time_limit = -1;   // seconds, < 0: unlimited; not deterministic
    std::uint64_t seed = 0;   // value-order tie breaking
    std::optional<Solution> hint;  // used as first incumbent when it verifies
};

struct SearchResult {
    Status status = Status::Unknown;
    std::optional<Solution> incumbent;
    Time lower_bound = 0;  // kInf when proven infeasible
    long nodes = 0;
    long solutions = 0;
    double seconds = 0;
};

// Throws std::invalid_argument for references to missing tasks or choices,
// empty or oversized domains and mis-sized lookup tables.
void check_model(const Model& m);

SearchResult solve(const Model& m, const SearchParams& params = {});

// Independent check of a complete solution against every constraint; returns
// readable violations (empty when valid).
std::vector<std::string> verify(const Model& m, const Solution& s);

// Objective value implied by a solution's ends and choices.
Time objective_of(const Model& m, const Solution& s);

}  // namespace hffs::engine
