#include "hetnet/config.hpp"

#include <cmath>

namespace hetnet {

namespace {

void check(std::vector<Violation>& out, bool ok, const char* field, const char* message) {
    if (!ok) out.push_back({field, message});
}

// NaN fails every comparison, so each check is phrased as "value is good".
void checkNetwork(std::vector<Violation>& v, const NetworkConfig& n) {
    check(v, n.lambda1 > 0 && std::isfinite(n.lambda1), "lambda1", "lambda1 must be positive");
    check(v, n.lambda2 > 0 && std::isfinite(n.lambda2), "lambda2", "lambda2 must be positive");
    check(v, n.lambdaU >= 0 && std::isfinite(n.lambdaU), "lambdaU", "lambdaU must be non-negative");
    check(v, n.p1 > 0 && std::isfinite(n.p1), "p1", "p1 must be positive");
    check(v, n.p2 > 0 && std::isfinite(n.p2), "p2", "p2 must be positive");
    check(v, n.alpha1 > 2 && std::isfinite(n.alpha1), "alpha1", "alpha1 must exceed 2");
    check(v, n.alpha2 > 2 && std::isfinite(n.alpha2), "alpha2", "alpha2 must exceed 2");
    check(v, n.bias >= 1 && std::isfinite(n.bias), "bias", "bias must be at least 1");
    check(v, n.noise >= 0 && std::isfinite(n.noise), "noise", "noise must be non-negative");
}

void checkSplit(std::vector<Violation>& v, const SplitConfig& s) {
    check(v, s.wTotal > 0 && std::isfinite(s.wTotal), "wTotal", "wTotal must be positive");
    check(v, s.w1 > 0, "w1", "w1 must be positive");
    check(v, s.w1 < s.wTotal, "w1", "w1 must be strictly less than wTotal");
    check(v, s.muC >= 0 && s.muC < 1, "muC", "muC must lie in [0,1)");
    check(v, s.gamma >= 1 && !std::isnan(s.gamma), "gamma", "gamma must be at least 1");
    check(v, s.eta >= 0 && s.eta < 1, "eta", "eta must lie in [0,1)");
}

void checkMobility(std::vector<Violation>& v, const MobilityConfig& m) {
    check(v, m.velocity >= 0 && std::isfinite(m.velocity), "velocity", "velocity must be non-negative");
    check(v, m.dConv >= 0, "dConv", "dConv must be non-negative");
    check(v, m.dConvX2 >= 0, "dConvX2", "dConvX2 must be non-negative");
    check(v, m.dInterAnchor >= 0, "dInterAnchor", "dInterAnchor must be non-negative");
    check(v, m.dInterAnchorX2 >= 0, "dInterAnchorX2", "dInterAnchorX2 must be non-negative");
    check(v, m.dIntraAnchor >= 0, "dIntraAnchor", "dIntraAnchor must be non-negative");
    check(v, m.probX2Conv >= 0 && m.probX2Conv <= 1, "probX2Conv", "probX2Conv must lie in [0,1]");
    check(v, m.probX2Split >= 0 && m.probX2Split <= 1, "probX2Split", "probX2Split must lie in [0,1]");
}

}  // namespace

std::string ValidationResult::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v.field + ": " + v.message;
    }
    return s;
}

ValidationResult validate(const NetworkConfig& net) {
    ValidationResult r;
    checkNetwork(r.violations, net);
    return r;
}

ValidationResult validate(const ModelConfig& cfg) {
    ValidationResult r;
    checkNetwork(r.violations, cfg.network);
    checkSplit(r.violations, cfg.split);
    checkMobility(r.violations, cfg.mobility);
    return r;
}

void requireValid(const NetworkConfig& net) {
    auto r = validate(net);
    if (!r.ok()) throw ModelError("invalid configuration: " + r.summary());
}

void requireValid(const ModelConfig& cfg) {
    auto r = validate(cfg);
    if (!r.ok()) throw ModelError("invalid configuration: " + r.summary());
}

DerivedRatios derivedRatios(const NetworkConfig& net) {
    DerivedRatios d;
    d.p12 = net.p1 / net.p2;
    d.p21 = net.p2 / net.p1;
    d.p12Tilde = net.p1 / (net.bias * net.p2);
    d.p21Tilde = net.bias * net.p2 / net.p1;
    return d;
}

}  // namespace hetnet
