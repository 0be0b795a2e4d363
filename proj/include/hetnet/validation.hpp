#pragma once

#include <string>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/transect.hpp"

namespace hetnet {

struct ValidationTolerances {
    double coverage = 0.03;     // max |empirical - analytic| CCDF over the grid
    double association = 0.01;  // absolute, per set
    double handover = 0.05;     // relative, per gated class
    std::uint64_t minEvents = 100;  // a class with fewer events is reported, not gated
};

struct LinkCheck {
    LinkType link = LinkType::ConvMacro;
    std::uint64_t samples = 0;
    bool sufficient = false;
    double maxDeviation = 0;
    double worstThresholdDb = 0;
    bool pass = false;
};

struct AssociationCheck {
    UserSet set = UserSet::Set1;
    double simulated = 0;
    double analytic = 0;
    double deviation = 0;
    bool pass = false;
};

struct RateCheck {
    HandoverClass kind = HandoverClass::Conv11;
    std::uint64_t events = 0;
    double simulated = 0;  // per metre
    double analytic = 0;   // per metre
    double relDeviation = 0;
    bool gated = false;
    bool pass = true;
    std::string note;
};

struct ValidationReport {
    std::string configHash;
    SimulationSpec simulation;
    TransectSpec transect;
    ValidationTolerances tolerances;
    int completed = 0;
    int discardedEscaped = 0;
    int discardedEmpty = 0;
    bool lowConfidence = false;
    std::vector<LinkCheck> links;
    std::vector<EmpiricalCcdf> ccdfs;  // one per link with sufficient samples
    std::vector<AssociationCheck> association;
    bool handoverChecked = false;
    double transectLength = 0;  // m
    std::vector<RateCheck> handover;      // exact transect counts, gated
    std::vector<RateCheck> walkHandover;  // random-walk counts, reported only
    bool passed = false;

    // "pass", "fail", or "low-confidence" (small runs never fail hard)
    std::string status() const;
};

// Runs the random-walk simulation and, when alpha1 = alpha2, the transect
// handover count, and compares both with the analysis.
ValidationReport runValidation(const ModelConfig& cfg, const SimulationSpec& sim, const TransectSpec& transect,
                               const ValidationTolerances& tol = {});

std::string reportJson(const ValidationReport& r);
std::string reportText(const ValidationReport& r);

}  // namespace hetnet
