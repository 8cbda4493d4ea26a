#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hffs/model.hpp"

namespace testing_support {

using hffs::Time;

// Hand-written instances. Ids are 1-based: job j+1, stage s+1, machines
// numbered stage by stage from 1.
class Builder {
public:
    Builder(std::vector<int> machines_per_stage, int workers) {
        int id = 1;
        for (std::size_t s = 0; s < machines_per_stage.size(); ++s) {
            for (int q = 0; q < machines_per_stage[s]; ++q) inst_.machines.push_back({id++, static_cast<int>(s)});
            inst_.stage_ids.push_back(static_cast<int>(s) + 1);
            inst_.workers_min.push_back(1);
            inst_.workers_max.push_back(1);
        }
        inst_.workers_total = workers;
    }

    Builder& window(int stage, int lo, int hi) {
        inst_.workers_min[static_cast<std::size_t>(stage)] = lo;
        inst_.workers_max[static_cast<std::size_t>(stage)] = hi;
        return *this;
    }
    Builder& windows(int lo, int hi) {
        for (int s = 0; s < inst_.num_stages(); ++s) window(s, lo, hi);
        return *this;
    }
    // (stage, times for w = lo..hi)
    Builder& job(std::vector<std::pair<int, std::vector<Time>>> ops) {
        jobs_.push_back(std::move(ops));
        return *this;
    }
    // (stage, single-worker time); crew times by ceiling
    Builder& nominal_job(const std::vector<std::pair<int, Time>>& ops) {
        std::vector<std::pair<int, std::vector<Time>>> full;
        for (auto [s, p1] : ops) {
            std::vector<Time> row;
            for (int w = inst_.workers_min[static_cast<std::size_t>(s)]; w <= inst_.workers_max[static_cast<std::size_t>(s)]; ++w)
                row.push_back((p1 + w - 1) / w);
            full.push_back({s, row});
        }
        return job(std::move(full));
    }
    // machine indices, 0-based
    Builder& transport(int from, int to, Time t) {
        transports_.push_back({from, to, t});
        return *this;
    }
    Builder& all_transport(Time t) {
        default_transport_ = t;
        return *this;
    }
    Builder& buffers(int in, int out) {
        buf_in_ = in;
        buf_out_ = out;
        return *this;
    }
    Builder& buffer(int machine, int in, int out) {
        machine_buffers_.push_back({machine, in, out});
        return *this;
    }

    hffs::Instance build() const {
        hffs::Instance inst = inst_;
        const auto nj = jobs_.size();
        const auto ns = static_cast<std::size_t>(inst.num_stages());
        inst.proc_time.assign(nj, std::vector<std::vector<Time>>(ns));
        for (std::size_t j = 0; j < nj; ++j) {
            inst.job_ids.push_back(static_cast<int>(j) + 1);
            std::vector<int> r;
            for (const auto& [s, row] : jobs_[j]) {
                r.push_back(s);
                inst.proc_time[j][static_cast<std::size_t>(s)] = row;
            }
            inst.route.push_back(r);
        }
        const int nm = inst.num_machines();
        inst.buffer_in.assign(static_cast<std::size_t>(nm), buf_in_);
        inst.buffer_out.assign(static_cast<std::size_t>(nm), buf_out_);
        for (const auto& b : machine_buffers_) {
            inst.buffer_in[static_cast<std::size_t>(b[0])] = b[1];
            inst.buffer_out[static_cast<std::size_t>(b[0])] = b[2];
        }
        inst.transport.assign(static_cast<std::size_t>(nm * nm), hffs::kNoTransport);
        if (default_transport_ >= 0)
            for (int m = 0; m < nm; ++m)
                for (int n = 0; n < nm; ++n)
                    if (inst.machines[static_cast<std::size_t>(n)].stage > inst.machines[static_cast<std::size_t>(m)].stage)
                        inst.set_transport(m, n, default_transport_);
        for (const auto& t : transports_) inst.set_transport(t.from, t.to, t.t);
        return inst;
    }

private:
    struct Link {
        int from, to;
        Time t;
    };
    hffs::Instance inst_;
    std::vector<std::vector<std::pair<int, std::vector<Time>>>> jobs_;
    std::vector<Link> transports_;
    std::vector<std::array<int, 3>> machine_buffers_;
    Time default_transport_ = -1;
    int buf_in_ = 1;
    int buf_out_ = 1;
};

// Operation plan with explicit intervals.
inline hffs::OperationPlan op(int machine, int workers, Time wb0, Time pr0, Time pr1, Time wa1) {
    return {machine, workers, {wb0, pr0}, {pr0, pr1}, {pr1, wa1}};
}

}  // namespace testing_support
