#pragma once

#include <array>

#include "hetnet/config.hpp"

namespace hetnet {

// Mean boundary crossings per metre travelled by a user moving in a straight
// line through the (power and bias weighted) two-tier tessellation.
struct HandoverRates {
    // conv[i][j]: serving tier i+1 -> tier j+1
    std::array<std::array<double, 2>, 2> conv{};
    double interAnchor = 0;  // macro-cell boundary crossings
    double intraAnchor = 0;  // remaining serving changes inside one macro cell
    bool intraClamped = false;

    double total() const { return conv[0][0] + conv[0][1] + conv[1][0] + conv[1][1]; }
};

// Requires alpha1 = alpha2. lambda2 = 0 is accepted (single-tier limit).
HandoverRates handoverRates(const NetworkConfig& net);

// Single-tier crossing rate of a macro Poisson-Voronoi tessellation.
double interAnchorRate(double lambda1);

struct HandoverCost {
    double value = 0;  // fraction of time spent in handover; may exceed 1
    Architecture architecture = Architecture::Conventional;
};

HandoverCost conventionalCost(const ModelConfig& cfg);
HandoverCost splitCost(const ModelConfig& cfg);
HandoverCost handoverCost(const ModelConfig& cfg, Architecture a);

// Upper bound on the relative cost reduction of the split architecture for
// dense small cells and no X2 links: 1 - dIntraAnchor / dConv.
double asymptoticGain(const MobilityConfig& m);

// (D_conv - D_split) / D_conv. Both costs are linear in velocity, so the ratio
// is evaluated at unit speed when the configured velocity is zero.
double costReduction(const ModelConfig& cfg);

}  // namespace hetnet
