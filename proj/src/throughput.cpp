#include "hetnet/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/mobility.hpp"

namespace hetnet {

ThroughputModel::ThroughputModel(const ModelConfig& cfg) : cfg_(cfg) {
    requireValid(cfg_);
    CoverageModel cov(cfg_.network);
    assoc_ = cov.association();
    loads_ = hetnet::loads(cfg_.network, assoc_);
    se_ = cov.spectralEfficiencies();
}

TierThroughputs ThroughputModel::conventional() const {
    const auto& s = cfg_.split;
    const double share = (1.0 - s.muC) * s.wTotal;
    TierThroughputs t;
    t.architecture = Architecture::Conventional;
    t.t1 = share * (1.0 - s.eta) * se_[LinkType::ConvMacro];
    t.t2 = share * (1.0 - s.eta) * se_[LinkType::ConvSmall];
    t.tB = share * s.eta * se_[LinkType::ConvBiased];
    return t;
}

MacroBandRates ThroughputModel::macroBandRates() const {
    const double w1 = cfg_.split.w1;
    return {w1 * se_[LinkType::SplitMacro], w1 * se_[LinkType::SplitCtrl2], w1 * se_[LinkType::SplitCtrlB]};
}

FeasibilityReport ThroughputModel::feasibility() const {
    const auto& s = cfg_.split;
    const auto& n = cfg_.network;
    const auto rates = macroBandRates();
    const double w2 = s.w2();
    FeasibilityReport f;
    f.lhs = (1.0 - s.eta) * w2 * se_[LinkType::SplitData2] / rates.ctrlSmall +
            s.eta * w2 * se_[LinkType::SplitDataB] / rates.ctrlBiased;
    f.rhs = s.muC > 0 ? n.lambda1 * s.gamma / (n.lambda2 * s.muC) : std::numeric_limits<double>::infinity();
    f.margin = f.rhs - f.lhs;
    f.feasible = f.margin >= 0;
    return f;
}

double ThroughputModel::macroShareFactor() const {
    const auto& s = cfg_.split;
    const auto& n = cfg_.network;
    return 1.0 - n.lambda2 * s.muC / (n.lambda1 * s.gamma) * feasibility().lhs;
}

TierThroughputs ThroughputModel::split() const {
    const auto& s = cfg_.split;
    const double w2 = s.w2();
    TierThroughputs t;
    t.architecture = Architecture::Split;
    t.t2 = (1.0 - s.eta) * w2 * se_[LinkType::SplitData2];
    t.tB = s.eta * w2 * se_[LinkType::SplitDataB];
    const double factor = macroShareFactor();
    t.macroClamped = factor < 0;
    t.t1 = (1.0 - s.muC) * macroBandRates().macro * std::max(0.0, factor);
    return t;
}

double ThroughputModel::stationaryThroughput(Architecture a) const {
    const auto t = tiers(a);
    return assoc_.a1 * t.t1 / loads_.n1 + assoc_.a2 * t.t2 / loads_.n2 + assoc_.aB * t.tB / loads_.nB;
}

UserThroughput ThroughputModel::userThroughput(Architecture a) const {
    UserThroughput u;
    u.architecture = a;
    u.stationary = stationaryThroughput(a);
    u.handoverCost = handoverCost(cfg_, a).value;
    u.saturated = u.handoverCost >= 1.0;
    u.value = u.saturated ? 0.0 : u.stationary * (1.0 - u.handoverCost);
    return u;
}

double ThroughputModel::macroUserThroughput() const { return assoc_.a1 * split().t1 / loads_.n1; }

TierThroughputs conventionalTierThroughputs(const ModelConfig& cfg) { return ThroughputModel(cfg).conventional(); }

TierThroughputs splitTierThroughputs(const ModelConfig& cfg) { return ThroughputModel(cfg).split(); }

FeasibilityReport feasibility(const ModelConfig& cfg) { return ThroughputModel(cfg).feasibility(); }

UserThroughput averageUserThroughput(const ModelConfig& cfg, Architecture a) {
    return ThroughputModel(cfg).userThroughput(a);
}

namespace {

double marginAt(ModelConfig cfg, double lambda2) {
    cfg.network.lambda2 = lambda2;
    return ThroughputModel(cfg).feasibility().margin;
}

}  // namespace

BreakingPoint breakingDensity(const ModelConfig& cfg, double lower, double upper, double relTol, int maxIterations) {
    if (!(lower > 0) || !(upper > lower)) throw ModelError("breaking-density bracket must satisfy 0 < lower < upper");
    BreakingPoint b;
    b.lower = lower;
    b.upper = upper;
    if (marginAt(cfg, lower) < 0 || marginAt(cfg, upper) >= 0) return b;
    while (b.upper / b.lower - 1.0 > relTol && b.iterations < maxIterations) {
        const double mid = std::sqrt(b.lower * b.upper);
        (marginAt(cfg, mid) >= 0 ? b.lower : b.upper) = mid;
        ++b.iterations;
    }
    b.found = true;
    b.lambda2 = std::sqrt(b.lower * b.upper);
    return b;
}

TurningPoint macroTurningPoint(const ModelConfig& cfg, double lower, double upper, int points) {
    if (!(lower > 0) || !(upper > lower) || points < 3) throw ModelError("turning-point grid is invalid");
    TurningPoint best;
    int bestIndex = -1;
    for (int i = 0; i < points; ++i) {
        ModelConfig c = cfg;
        c.network.lambda2 = lower * std::pow(upper / lower, double(i) / (points - 1));
        const double v = ThroughputModel(c).macroUserThroughput();
        if (bestIndex < 0 || v > best.value) {
            best.value = v;
            best.lambda2 = c.network.lambda2;
            bestIndex = i;
        }
    }
    best.interior = bestIndex > 0 && bestIndex < points - 1;
    return best;
}

}  // namespace hetnet
