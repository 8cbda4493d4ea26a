#include "hffs/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hffs {

namespace {

Time ceil_div(Time a, Time b) { return (a + b - 1) / b; }

std::string pair_name(const Instance& inst, int m, int n) {
    return "machine " + std::to_string(inst.machines[m].id) + " -> machine " + std::to_string(inst.machines[n].id);
}

// Sum of the k smallest values of a sorted vector.
Time prefix_sum(const std::vector<Time>& sorted, std::size_t k) {
    return std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(std::min(k, sorted.size())), Time{0});
}

}  // namespace

std::vector<std::vector<Time>> relaxed_times(const Instance& inst) {
    std::vector<std::vector<Time>> out(inst.num_jobs(), std::vector<Time>(inst.num_stages(), 0));
    for (int j = 0; j < inst.num_jobs(); ++j)
        for (int s : inst.route[j]) {
            const auto& row = inst.proc_time[j][s];
            out[j][s] = *std::min_element(row.begin(), row.end());
        }
    return out;
}

Time lb1_stage_load(const Instance& inst) {
    const auto pbar = relaxed_times(inst);
    Time best = 0;
    for (int s = 0; s < inst.num_stages(); ++s) {
        Time load = 0;
        for (int j = 0; j < inst.num_jobs(); ++j) load += pbar[j][s];
        const auto ms = static_cast<Time>(inst.machines_of_stage(s).size());
        if (ms > 0) best = std::max(best, ceil_div(load, ms));
    }
    return best;
}

std::vector<Time> transport_prefix(const Instance& inst, int job) {
    const auto& r = inst.route[job];
    std::vector<Time> out(r.size(), 0);
    if (r.empty()) return out;
    std::vector<int> layer = inst.machines_of_stage(r[0]);
    std::vector<Time> dist(layer.size(), 0);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const auto next = inst.machines_of_stage(r[i]);
        std::vector<Time> nd(next.size(), std::numeric_limits<Time>::max());
        for (std::size_t a = 0; a < layer.size(); ++a) {
            for (std::size_t b = 0; b < next.size(); ++b) {
                const Time t = inst.transport_time(layer[a], next[b]);
                if (t < 0) throw std::invalid_argument("missing transport time for " + pair_name(inst, layer[a], next[b]));
                nd[b] = std::min(nd[b], dist[a] + t);
            }
        }
        layer = next;
        dist = std::move(nd);
        out[i] = *std::min_element(dist.begin(), dist.end());
    }
    return out;
}

Time shortest_transport(const Instance& inst, int job) {
    const auto prefix = transport_prefix(inst, job);
    return prefix.empty() ? 0 : prefix.back();
}

Time lb2_job_path(const Instance& inst) {
    const auto pbar = relaxed_times(inst);
    Time best = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) {
        Time total = shortest_transport(inst, j);
        for (int s : inst.route[j]) total += pbar[j][s];
        best = std::max(best, total);
    }
    return best;
}

Time lb3_stage_head(const Instance& inst) {
    const auto pbar = relaxed_times(inst);
    const int ns = inst.num_stages();
    std::vector<Time> load(ns, 0);
    std::vector<Time> head(ns, std::numeric_limits<Time>::max());
    for (int j = 0; j < inst.num_jobs(); ++j) {
        const auto& r = inst.route[j];
        const auto tp = transport_prefix(inst, j);
        Time before = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            load[r[i]] += pbar[j][r[i]];
            head[r[i]] = std::min(head[r[i]], before + tp[i]);
            before += pbar[j][r[i]];
        }
    }
    Time best = 0;
    for (int s = 0; s < ns; ++s) {
        if (load[s] == 0) continue;
        const auto ms = static_cast<Time>(inst.machines_of_stage(s).size());
        best = std::max(best, ceil_div(load[s], ms) + head[s]);
    }
    return best;
}

// For consecutive stages s, s+1 with a and b machines and the n jobs eligible
// for both, with h (stage s) and t (stage s+1) sorted ascending:
//   heads: b*C >= sum_{k<=min(n,b)} h_k + max(0, min(n,b)-a)*h_1 + sum(t)
//   tails: a*C >= sum_{k<=min(n,a)} t_k + max(0, min(n,a)-b)*t_1 + sum(h)
// The first job on each downstream machine has to leave stage s first; with
// fewer upstream machines some of those jobs queue behind another one.
TwoStageBounds two_stage_bounds(const Instance& inst) {
    const auto pbar = relaxed_times(inst);
    TwoStageBounds out;
    auto raise = [](std::optional<Time>& slot, Time v) { slot = slot ? std::max(*slot, v) : v; };
    for (int s = 0; s + 1 < inst.num_stages(); ++s) {
        std::vector<Time> h, t;
        for (int j = 0; j < inst.num_jobs(); ++j) {
            if (inst.eligible(j, s) && inst.eligible(j, s + 1)) {
                h.push_back(pbar[j][s]);
                t.push_back(pbar[j][s + 1]);
            }
        }
        if (h.empty()) continue;
        std::sort(h.begin(), h.end());
        std::sort(t.begin(), t.end());
        const auto n = static_cast<Time>(h.size());
        const auto a = static_cast<Time>(inst.machines_of_stage(s).size());
        const auto b = static_cast<Time>(inst.machines_of_stage(s + 1).size());
        const Time sum_h = prefix_sum(h, h.size());
        const Time sum_t = prefix_sum(t, t.size());
        const Time kb = std::min(n, b);
        const Time ka = std::min(n, a);
        const Time heads = ceil_div(prefix_sum(h, kb) + std::max<Time>(0, kb - a) * h[0] + sum_t, b);
        const Time tails = ceil_div(prefix_sum(t, ka) + std::max<Time>(0, ka - b) * t[0] + sum_h, a);
        if (a >= b) {
            raise(out.lb4, heads);
            raise(out.lb5, tails);
        } else {
            raise(out.lb6, heads);
            raise(out.lb7, tails);
        }
    }
    return out;
}

std::optional<Time> lb_two_stage(const Instance& inst) {
    const auto tb = two_stage_bounds(inst);
    std::optional<Time> best;
    for (const auto& v : {tb.lb4, tb.lb5, tb.lb6, tb.lb7})
        if (v) best = best ? std::max(*best, *v) : *v;
    return best;
}

// max(total work / W, largest single-operation time). Work of an operation is
// min_w w*p_w, which is p_1 whenever one worker is admissible and the work
// inequality holds; the per-operation floor is the relaxed time, i.e. the time
// at the largest crew when times do not increase with the crew.
Fraction lb8_fraction(const Instance& inst) {
    Time work = 0;
    Time floor = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) {
        for (int s : inst.route[j]) {
            Time wmin = std::numeric_limits<Time>::max();
            Time pmin = std::numeric_limits<Time>::max();
            for (int w = inst.workers_min[s]; w <= inst.workers_max[s]; ++w) {
                wmin = std::min(wmin, w * inst.proc(j, s, w));
                pmin = std::min(pmin, inst.proc(j, s, w));
            }
            work += wmin;
            floor = std::max(floor, pmin);
        }
    }
    const Time W = inst.workers_total;
    if (floor * W >= work) return {floor, 1};
    const Time g = std::gcd(work, W);
    return {work / g, W / g};
}

Time lb8_malleable(const Instance& inst) {
    const auto f = lb8_fraction(inst);
    return ceil_div(f.num, f.den);
}

BoundReport best_lb(const Instance& inst) {
    BoundReport rep;
    rep.relaxed_times = relaxed_times(inst);
    rep.per_stage_head.assign(inst.num_jobs(), std::vector<std::pair<Time, Time>>(inst.num_stages(), {0, 0}));
    for (int j = 0; j < inst.num_jobs(); ++j) {
        const auto tp = transport_prefix(inst, j);
        rep.transport_min.push_back(tp.empty() ? 0 : tp.back());
        Time before = 0;
        const auto& r = inst.route[j];
        for (std::size_t i = 0; i < r.size(); ++i) {
            rep.per_stage_head[j][r[i]] = {before, tp[i]};
            before += rep.relaxed_times[j][r[i]];
        }
    }
    rep.lb1 = lb1_stage_load(inst);
    rep.lb2 = lb2_job_path(inst);
    rep.lb3 = lb3_stage_head(inst);
    const auto tb = two_stage_bounds(inst);
    rep.lb4 = tb.lb4;
    rep.lb5 = tb.lb5;
    rep.lb6 = tb.lb6;
    rep.lb7 = tb.lb7;
    rep.lb8 = lb8_malleable(inst);
    rep.best = std::max({rep.lb1, rep.lb2, rep.lb3, rep.lb8});
    for (const auto& v : {rep.lb4, rep.lb5, rep.lb6, rep.lb7})
        if (v) rep.best = std::max(rep.best, *v);
    return rep;
}

}  // namespace hffs
