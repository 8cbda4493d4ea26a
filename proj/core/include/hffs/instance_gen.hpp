#pragma once

#include <cstdint>
#include <random>

#include "hffs/model.hpp"

namespace hffs {

// Parameters of the two testbed families.
//
// Group 1: 8 stages x 10 machines, W = 20, stages 4 and 8 skipped with
// probability 0.2 each. Group 2: 2-4 stages, W = 8, variant 1 has two machines
// per stage, variant 2 draws 1-3 machines per stage.
struct GenSpec {
    int group = 2;
    int jobs = 20;
    int stages = 2;   // group 2 only
    int variant = 1;  // group 2 only
    std::uint64_t seed = 0;
};

// Deterministic across platforms: the draw order and the integer mapping are
// fixed (see docs/instance_generation.md). Throws std::invalid_argument for an
// unsupported spec.
Instance generate(const GenSpec& spec);

// ceil(nominal / workers). Throws std::invalid_argument when workers < 1.
Time derive_proc_time(Time nominal, int workers);

// std::mt19937_64 (its output sequence is fixed by the standard) with our own
// mapping to integers; std:: distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    // Uniform integer in [lo, hi] by rejection sampling.
    long uniform(long lo, long hi);
    // True with probability p (53-bit uniform double compared to p).
    bool bernoulli(double p);

private:
    std::mt19937_64 engine_;
};

}  // namespace hffs
