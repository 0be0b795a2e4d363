#pragma once

#include <cstdint>

#include "hetnet/config.hpp"
#include "hetnet/montecarlo.hpp"

namespace hetnet {

// Handover counting along long straight lines through fresh PPP strips. Cell
// boundaries are located exactly (lower envelope of the per-BS distance
// parabolas along the line), so rates are free of sampling-resolution bias.
// Used where the short random walks see too few events of a rare class.
struct TransectSpec {
    double lineLength = 100.0 * units::kKm;
    // Lines are added in batches until every conventional class has this many
    // events or the total length reaches maxLength.
    std::uint64_t minEventsPerClass = 2000;
    double maxLength = 4e6 * units::kKm;
    int batchLines = 64;
    // Strip half-width per tier, in units of 1/sqrt(lambda_k).
    double stripWidth = 4.0;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct TransectResult {
    HandoverCounts counts;
    int lines = 0;
    // Boundary points where the nearest in-strip BS was farther than the strip
    // half-width, so an out-of-strip BS could have been closer.
    std::uint64_t uncertified = 0;
};

// Requires alpha1 = alpha2. lambda2 = 0 is accepted.
TransectResult transectHandovers(const NetworkConfig& net, const TransectSpec& spec);

}  // namespace hetnet
