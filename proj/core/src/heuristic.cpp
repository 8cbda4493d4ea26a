#include "hffs/heuristic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "hffs/instance_gen.hpp"

namespace hffs {

namespace {

// Unit-time usage profile that grows on demand.
class Profile {
public:
    int at(Time t) const { return t < static_cast<Time>(use_.size()) ? use_[static_cast<std::size_t>(t)] : 0; }
    void add(Time from, Time to, int w) {
        if (to > static_cast<Time>(use_.size())) use_.resize(static_cast<std::size_t>(to), 0);
        for (Time t = from; t < to; ++t) use_[static_cast<std::size_t>(t)] += w;
    }
    Time extent() const { return static_cast<Time>(use_.size()); }

private:
    std::vector<int> use_;
};

struct Timelines {
    std::vector<Profile> machine, entry, exit;
    Profile workers;
};

struct Placement {
    int machine = -1;
    int workers = 0;
    Time start = 0;      // process start
    Time exit_wait = 0;  // wait after the previous operation
};

class Builder {
public:
    Builder(const Instance& inst, const HeuristicOptions& opt) : inst_(inst), opt_(opt) {
        tl_.machine.resize(static_cast<std::size_t>(inst.num_machines()));
        tl_.entry.resize(static_cast<std::size_t>(inst.num_machines()));
        tl_.exit.resize(static_cast<std::size_t>(inst.num_machines()));
        sched_.ops.resize(static_cast<std::size_t>(inst.num_jobs()));
    }

    void insert(int j) {
        for (Time T = 0;;) {
            auto plan = try_job(j, T);
            if (plan) {
                commit(j, *plan);
                return;
            }
            T = std::max(T, first_start_) + 1;
        }
    }

    Schedule finish() {
        sched_.makespan = makespan_of(sched_);
        return sched_;
    }

private:
    Time last_event() const {
        Time e = tl_.workers.extent();
        for (const auto* v : {&tl_.machine, &tl_.entry, &tl_.exit})
            for (const auto& p : *v) e = std::max(e, p.extent());
        return e;
    }

    // Earliest start >= lo where machine m and w workers are free for p units.
    Time earliest_slot(int m, int w, Time p, Time lo) const {
        const auto& mp = tl_.machine[static_cast<std::size_t>(m)];
        Time s = lo;
        for (;;) {
            bool clash = false;
            for (Time t = s; t < s + p; ++t) {
                if (mp.at(t) > 0 || tl_.workers.at(t) + w > inst_.workers_total) {
                    s = t + 1;
                    clash = true;
                    break;
                }
            }
            if (!clash) return s;
        }
    }

    std::optional<std::vector<Placement>> try_job(int j, Time T) {
        const auto& r = inst_.route[static_cast<std::size_t>(j)];
        const Time horizon = last_event() + 1;
        std::vector<Placement> plan;
        Time prev_end = T;
        int prev_m = -1;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int s = r[i];
            std::vector<int> cands;
            if (!opt_.machines.empty()) cands.push_back(opt_.machines[static_cast<std::size_t>(j)][i]);
            else cands = inst_.machines_of_stage(s);

            // longest wait the previous exit buffer allows from prev_end on
            Time xmax = 0;
            if (prev_m >= 0) {
                const auto& ex = tl_.exit[static_cast<std::size_t>(prev_m)];
                const int cap = inst_.buffer_out[static_cast<std::size_t>(prev_m)];
                while (ex.at(prev_end + xmax) + 1 <= cap && prev_end + xmax < horizon) ++xmax;
                if (prev_end + xmax >= horizon && ex.at(prev_end + xmax) + 1 <= cap) xmax = kUnbounded;
            }

            std::optional<Placement> best;
            Time best_finish = 0;
            for (int m : cands) {
                const Time t = prev_m >= 0 ? inst_.transport_time(prev_m, m) : 0;
                const Time arrive = prev_end + t;
                const auto& en = tl_.entry[static_cast<std::size_t>(m)];
                const int cap_in = inst_.buffer_in[static_cast<std::size_t>(m)];
                for (int w = inst_.workers_min[static_cast<std::size_t>(s)]; w <= inst_.workers_max[static_cast<std::size_t>(s)]; ++w) {
                    const Time p = inst_.proc(j, s, w);
                    Time S = arrive;
                    for (;;) {
                        S = earliest_slot(m, w, p, S);
                        if (prev_m < 0) {
                            const Placement pl{m, w, S, 0};
                            if (!best || S + p < best_finish) {
                                best = pl;
                                best_finish = S + p;
                            }
                            break;
                        }
                        // entry buffer must be free on [prev_end + x + t, S)
                        Time lo_x = 0;
                        for (Time u = S - 1; u >= arrive; --u) {
                            if (en.at(u) + 1 > cap_in) {
                                lo_x = u + 1 - arrive;
                                break;
                            }
                        }
                        if (lo_x <= std::min(xmax, S - arrive)) {
                            const Placement pl{m, w, S, lo_x};
                            if (!best || S + p < best_finish) {
                                best = pl;
                                best_finish = S + p;
                            }
                            break;
                        }
                        // a later start cannot help once every profile is empty
                        if (S >= horizon) break;
                        ++S;
                    }
                }
            }
            if (!best) return std::nullopt;
            if (i == 0) first_start_ = best->start;
            plan.push_back(*best);
            prev_end = best->start + inst_.proc(j, s, best->workers);
            prev_m = best->machine;
        }
        return plan;
    }

    void commit(int j, const std::vector<Placement>& plan) {
        const auto& r = inst_.route[static_cast<std::size_t>(j)];
        auto& ops = sched_.ops[static_cast<std::size_t>(j)];
        ops.assign(r.size(), OperationPlan{});
        for (std::size_t i = 0; i < r.size(); ++i) {
            const auto& pl = plan[i];
            const Time p = inst_.proc(j, r[i], pl.workers);
            auto& op = ops[i];
            op.machine = pl.machine;
            op.workers = pl.workers;
            op.process = {pl.start, pl.start + p};
            if (i == 0) {
                op.wait_before = {pl.start, pl.start};
            } else {
                auto& prev = ops[i - 1];
                const Time x = pl.exit_wait;
                prev.wait_after = {prev.process.end, prev.process.end + x};
                const Time arrive = prev.wait_after.end + inst_.transport_time(prev.machine, pl.machine);
                op.wait_before = {arrive, pl.start};
            }
            op.wait_after = {op.process.end, op.process.end};
        }
        for (auto& op : ops) {
            const auto m = static_cast<std::size_t>(op.machine);
            tl_.machine[m].add(op.process.start, op.process.end, 1);
            tl_.workers.add(op.process.start, op.process.end, op.workers);
            tl_.entry[m].add(op.wait_before.start, op.wait_before.end, 1);
            tl_.exit[m].add(op.wait_after.start, op.wait_after.end, 1);
        }
    }

    static constexpr Time kUnbounded = std::numeric_limits<Time>::max() / 4;

    const Instance& inst_;
    const HeuristicOptions& opt_;
    Timelines tl_;
    Time first_start_ = 0;
    Schedule sched_;
};

Schedule build(const Instance& inst, const HeuristicOptions& opt, const std::vector<int>& order) {
    Builder b(inst, opt);
    for (int j : order) b.insert(j);
    return b.finish();
}

}  // namespace

Schedule construct_schedule(const Instance& inst, const HeuristicOptions& opt) {
    const int nj = inst.num_jobs();
    if (nj == 0) throw std::invalid_argument("construct_schedule: no jobs");
    if (!opt.machines.empty() && static_cast<int>(opt.machines.size()) != nj)
        throw std::invalid_argument("construct_schedule: machine table does not match the jobs");

    std::vector<Time> work(static_cast<std::size_t>(nj), 0);
    for (int j = 0; j < nj; ++j)
        for (int s : inst.route[static_cast<std::size_t>(j)]) {
            const auto& row = inst.proc_time[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
            work[static_cast<std::size_t>(j)] += *std::min_element(row.begin(), row.end());
        }

    std::vector<std::vector<int>> orders;
    std::vector<int> base(static_cast<std::size_t>(nj));
    std::iota(base.begin(), base.end(), 0);
    orders.push_back(base);
    auto longest = base;
    std::stable_sort(longest.begin(), longest.end(), [&](int a, int b) { return work[static_cast<std::size_t>(a)] > work[static_cast<std::size_t>(b)]; });
    orders.push_back(longest);
    auto shortest = base;
    std::stable_sort(shortest.begin(), shortest.end(), [&](int a, int b) { return work[static_cast<std::size_t>(a)] < work[static_cast<std::size_t>(b)]; });
    orders.push_back(shortest);
    Rng rng(opt.seed);
    for (int k = 0; k < opt.random_orders; ++k) {
        auto o = base;
        for (std::size_t i = o.size(); i > 1; --i) std::swap(o[i - 1], o[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);
        orders.push_back(std::move(o));
    }

    std::optional<Schedule> best;
    for (const auto& o : orders) {
        Schedule s = build(inst, opt, o);
        if (!best || s.makespan < best->makespan) best = std::move(s);
    }
    return *best;
}

}  // namespace hffs
