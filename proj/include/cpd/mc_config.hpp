#pragma once

#include <cstdint>

namespace cpd {

struct MonteCarloConfig {
    long replications = 10000;
    std::uint64_t master_seed = 1;
    int parallelism = 1; // worker count hint; results are independent of it
};

} // namespace cpd
