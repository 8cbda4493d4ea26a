#include "hffs/instance_gen.hpp"

#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace hffs {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    // Largest multiple of range representable; draws at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<long>(x % range);
}

bool Rng::bernoulli(double p) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return u < p;
}

Time derive_proc_time(Time nominal, int workers) {
    if (workers < 1) throw std::invalid_argument("derive_proc_time: worker count must be at least 1");
    if (nominal < 1) throw std::invalid_argument("derive_proc_time: nominal time must be positive");
    return (nominal + workers - 1) / workers;
}

namespace {

constexpr double kSkipProbability = 0.2;
constexpr int kMaxWorkersPerOp = 3;

void add_machines(Instance& inst, const std::vector<int>& per_stage) {
    int id = 1;
    for (int s = 0; s < static_cast<int>(per_stage.size()); ++s)
        for (int k = 0; k < per_stage[s]; ++k) inst.machines.push_back({id++, s});
}

void fill_processing(Instance& inst, Rng& rng) {
    const int ns = inst.num_stages();
    inst.proc_time.assign(inst.num_jobs(), std::vector<std::vector<Time>>(ns));
    for (int j = 0; j < inst.num_jobs(); ++j) {
        for (int s : inst.route[j]) {
            const Time nominal = rng.uniform(2, 15);
            auto& row = inst.proc_time[j][s];
            for (int w = inst.workers_min[s]; w <= inst.workers_max[s]; ++w) row.push_back(derive_proc_time(nominal, w));
        }
    }
}

// Transport draws for every machine pair of consecutive eligible stages of
// some job; pairs are visited in lexicographic stage order.
void fill_transport(Instance& inst, Rng& rng, bool scale_by_distance) {
    std::set<std::pair<int, int>> stage_pairs;
    for (const auto& r : inst.route)
        for (std::size_t i = 1; i < r.size(); ++i) stage_pairs.insert({r[i - 1], r[i]});
    inst.transport.assign(static_cast<std::size_t>(inst.num_machines()) * inst.num_machines(), kNoTransport);
    for (const auto& [a, b] : stage_pairs) {
        const auto from = inst.machines_of_stage(a);
        const auto to = inst.machines_of_stage(b);
        for (int m : from) {
            for (int n : to) {
                Time t = rng.uniform(1, 9);
                if (scale_by_distance) t *= (b - a);
                inst.set_transport(m, n, t);
            }
        }
    }
}

Instance generate_group1(const GenSpec& spec) {
    constexpr int kStages = 8;
    constexpr int kMachinesPerStage = 10;
    Rng rng(spec.seed);
    Instance inst;
    for (int j = 0; j < spec.jobs; ++j) inst.job_ids.push_back(j + 1);
    for (int s = 0; s < kStages; ++s) inst.stage_ids.push_back(s + 1);
    add_machines(inst, std::vector<int>(kStages, kMachinesPerStage));
    inst.workers_total = 20;
    inst.workers_min.assign(kStages, 1);
    inst.workers_max.assign(kStages, kMaxWorkersPerOp);

    // Stages 4 and 8 (indices 3 and 7) are the optional ones.
    for (int j = 0; j < spec.jobs; ++j) {
        const bool skip4 = rng.bernoulli(kSkipProbability);
        const bool skip8 = rng.bernoulli(kSkipProbability);
        std::vector<int> r;
        for (int s = 0; s < kStages; ++s) {
            if ((s == 3 && skip4) || (s == 7 && skip8)) continue;
            r.push_back(s);
        }
        inst.route.push_back(std::move(r));
    }
    fill_processing(inst, rng);

    std::vector<bool> first_stage(kStages, false), last_stage(kStages, false);
    for (const auto& r : inst.route) {
        first_stage[r.front()] = true;
        last_stage[r.back()] = true;
    }
    for (const auto& m : inst.machines) {
        int in = static_cast<int>(rng.uniform(1, 5));
        int out = static_cast<int>(rng.uniform(1, 5));
        if (first_stage[m.stage]) in = spec.jobs;
        if (last_stage[m.stage]) out = spec.jobs;
        inst.buffer_in.push_back(in);
        inst.buffer_out.push_back(out);
    }
    fill_transport(inst, rng, false);
    return inst;
}

Instance generate_group2(const GenSpec& spec) {
    if (spec.stages < 2 || spec.stages > 4)
        throw std::invalid_argument("generate: group 2 needs 2, 3 or 4 stages");
    if (spec.variant != 1 && spec.variant != 2)
        throw std::invalid_argument("generate: group 2 variant must be 1 or 2");
    Rng rng(spec.seed);
    Instance inst;
    const int ns = spec.stages;
    for (int j = 0; j < spec.jobs; ++j) inst.job_ids.push_back(j + 1);
    for (int s = 0; s < ns; ++s) inst.stage_ids.push_back(s + 1);
    std::vector<int> per_stage(ns, 2);
    if (spec.variant == 2)
        for (int s = 0; s < ns; ++s) per_stage[s] = static_cast<int>(rng.uniform(1, 3));
    add_machines(inst, per_stage);
    inst.workers_total = 8;
    inst.workers_min.assign(ns, 1);
    inst.workers_max.assign(ns, kMaxWorkersPerOp);

    for (int j = 0; j < spec.jobs; ++j) {
        std::vector<int> r;
        for (int s = 0; s < ns; ++s)
            if (!rng.bernoulli(kSkipProbability)) r.push_back(s);
        if (r.empty()) r.push_back(static_cast<int>(rng.uniform(0, ns - 1)));
        inst.route.push_back(std::move(r));
    }
    fill_processing(inst, rng);
    for (std::size_t m = 0; m < inst.machines.size(); ++m) {
        inst.buffer_in.push_back(static_cast<int>(rng.uniform(1, 3)));
        inst.buffer_out.push_back(static_cast<int>(rng.uniform(1, 3)));
    }
    fill_transport(inst, rng, true);
    return inst;
}

}  // namespace

Instance generate(const GenSpec& spec) {
    if (spec.jobs < 1) throw std::invalid_argument("generate: at least one job is required");
    switch (spec.group) {
        case 1: return generate_group1(spec);
        case 2: return generate_group2(spec);
        default: throw std::invalid_argument("generate: group must be 1 or 2");
    }
}

}  // namespace hffs
