#pragma once

#include "hetnet/association.hpp"
#include "hetnet/config.hpp"
#include "hetnet/coverage.hpp"

namespace hetnet {

// Throughput delivered by a BS to its users of each association set (nats/s).
struct TierThroughputs {
    double t1 = 0;
    double t2 = 0;
    double tB = 0;
    Architecture architecture = Architecture::Conventional;
    // Split only: the macro rate would be negative (control demand exceeds the
    // macro capacity) and was clamped to zero.
    bool macroClamped = false;
};

// Ergodic rates on the macro band W1 used by the split macro-rate formula.
struct MacroBandRates {
    double macro = 0;      // W1 * SE(split macro)
    double ctrlSmall = 0;  // W1 * SE(control of Set2 users)
    double ctrlBiased = 0; // W1 * SE(control of SetB users)
};

struct FeasibilityReport {
    bool feasible = true;
    double lhs = 0;  // control demand, T2/Rc2 + TB/RcB
    double rhs = 0;  // lambda1 gamma / (lambda2 muC); +inf when muC = 0
    double margin = 0;
};

struct UserThroughput {
    double value = 0;         // nats/s
    double stationary = 0;    // value before the handover penalty
    double handoverCost = 0;  // raw cost, may exceed 1
    bool saturated = false;   // handoverCost >= 1
    Architecture architecture = Architecture::Conventional;
};

// Caches spectral efficiencies, association probabilities and loads of one
// configuration. Immutable once built.
class ThroughputModel {
public:
    explicit ThroughputModel(const ModelConfig& cfg);

    const ModelConfig& config() const { return cfg_; }
    const AssociationProbabilities& association() const { return assoc_; }
    const LoadEstimates& loads() const { return loads_; }
    const SpectralEfficiencies& spectralEfficiencies() const { return se_; }

    TierThroughputs conventional() const;
    TierThroughputs split() const;
    TierThroughputs tiers(Architecture a) const { return a == Architecture::Conventional ? conventional() : split(); }
    MacroBandRates macroBandRates() const;
    FeasibilityReport feasibility() const;

    // Bracketed factor of the split macro rate; negative when infeasible.
    double macroShareFactor() const;

    // Load-weighted per-user throughput before the handover penalty.
    double stationaryThroughput(Architecture a) const;
    UserThroughput userThroughput(Architecture a) const;

    // A1 * T1 / N1 under the split architecture.
    double macroUserThroughput() const;

private:
    ModelConfig cfg_;
    AssociationProbabilities assoc_;
    LoadEstimates loads_;
    SpectralEfficiencies se_;
};

TierThroughputs conventionalTierThroughputs(const ModelConfig& cfg);
TierThroughputs splitTierThroughputs(const ModelConfig& cfg);
FeasibilityReport feasibility(const ModelConfig& cfg);
UserThroughput averageUserThroughput(const ModelConfig& cfg, Architecture a);

struct BreakingPoint {
    bool found = false;
    double lambda2 = 0;  // 1/m^2
    double lower = 0;    // last feasible density of the bisection
    double upper = 0;    // last infeasible density
    int iterations = 0;
};

// Bisection (geometric midpoints) on lambda2 for the zero of the feasibility
// margin inside [lower, upper]. Stops when upper/lower - 1 <= relTol or after
// maxIterations. found = false when the margin does not change sign from
// feasible at `lower` to infeasible at `upper`.
BreakingPoint breakingDensity(const ModelConfig& cfg, double lower, double upper, double relTol = 0.01,
                              int maxIterations = 60);

struct TurningPoint {
    bool interior = false;
    double lambda2 = 0;
    double value = 0;
};

// Maximum of the split macro-user throughput over a log-spaced lambda2 grid.
TurningPoint macroTurningPoint(const ModelConfig& cfg, double lower, double upper, int points);

}  // namespace hetnet
