#include "hetnet/mobility.hpp"

#include <cmath>
#include <numbers>

#include "hetnet/specialfns.hpp"

namespace hetnet {

using std::numbers::pi;

double interAnchorRate(double lambda1) { return 4.0 * std::sqrt(lambda1) / pi; }

namespace {

// An empty small tier is a meaningful limit for the mobility quantities even
// though the rest of the model needs lambda2 > 0.
void requireValidAllowingEmptySmallTier(ModelConfig cfg) {
    if (cfg.network.lambda2 == 0.0) cfg.network.lambda2 = 1.0;
    requireValid(cfg);
}

}  // namespace

HandoverRates handoverRates(const NetworkConfig& net) {
    ModelConfig probe;
    probe.network = net;
    requireValidAllowingEmptySmallTier(probe);
    if (net.alpha1 != net.alpha2)
        throw ModelError("handover rates need a common path-loss exponent (alpha1 = alpha2)");

    // Cells are multiplicatively weighted: a user at distance r_k from
    // the nearest tier-k BS is served by the tier maximising w_k / r_k.
    const double alpha = net.alpha1;
    const std::array<double, 2> w{std::pow(net.p1, 1.0 / alpha), std::pow(net.bias * net.p2, 1.0 / alpha)};
    const std::array<double, 2> lambda{net.lambda1, net.lambda2};

    HandoverRates h;
    for (int i = 0; i < 2; ++i) {
        if (lambda[i] == 0.0) continue;
        // density of competitors seen from a tier-i cell, in tier-i distance units
        double eff = 0;
        for (int k = 0; k < 2; ++k) eff += lambda[k] * (w[k] / w[i]) * (w[k] / w[i]);
        for (int j = 0; j < 2; ++j) {
            if (lambda[j] == 0.0) continue;
            h.conv[i][j] = lambda[i] * lambda[j] * geometryFactor(w[i] / w[j]) / (pi * std::pow(eff, 1.5));
        }
    }
    h.interAnchor = interAnchorRate(net.lambda1);
    const double intra = h.total() - h.interAnchor;
    h.intraClamped = intra < 0;
    h.intraAnchor = h.intraClamped ? 0.0 : intra;
    return h;
}

HandoverCost conventionalCost(const ModelConfig& cfg) {
    requireValidAllowingEmptySmallTier(cfg);
    const auto& m = cfg.mobility;
    const double delay = (1.0 - m.probX2Conv) * m.dConv + m.probX2Conv * m.dConvX2;
    return {delay * m.velocity * handoverRates(cfg.network).total(), Architecture::Conventional};
}

HandoverCost splitCost(const ModelConfig& cfg) {
    requireValidAllowingEmptySmallTier(cfg);
    const auto& m = cfg.mobility;
    const auto h = handoverRates(cfg.network);
    const double anchorDelay = (1.0 - m.probX2Split) * m.dInterAnchor + m.probX2Split * m.dInterAnchorX2;
    return {m.velocity * (h.interAnchor * anchorDelay + h.intraAnchor * m.dIntraAnchor), Architecture::Split};
}

HandoverCost handoverCost(const ModelConfig& cfg, Architecture a) {
    return a == Architecture::Conventional ? conventionalCost(cfg) : splitCost(cfg);
}

double asymptoticGain(const MobilityConfig& m) {
    if (!(m.dConv > 0)) throw ModelError("asymptotic gain needs a positive conventional handover delay");
    return 1.0 - m.dIntraAnchor / m.dConv;
}

double costReduction(const ModelConfig& cfg) {
    ModelConfig c = cfg;
    if (c.mobility.velocity == 0.0) c.mobility.velocity = 1.0;
    const double conv = conventionalCost(c).value;
    if (!(conv > 0)) throw ModelError("cost reduction undefined: conventional handover cost is zero");
    return (conv - splitCost(c).value) / conv;
}

}  // namespace hetnet
