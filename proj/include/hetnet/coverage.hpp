#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/config.hpp"

namespace hetnet {

enum class LinkType {
    ConvMacro,   // conventional, macro-served user
    ConvSmall,   // conventional, small-cell user (Set2)
    ConvBiased,  // conventional, biased small-cell user during ABS
    SplitMacro,  // split, macro data/control on W1
    SplitData2,  // split, Set2 data on W2
    SplitCtrl2,  // split, Set2 control from the anchor macro on W1
    SplitDataB,  // split, SetB data on W2 during ABS (same law as ConvBiased)
    SplitCtrlB,  // split, SetB control from the anchor macro on W1
};

inline constexpr std::size_t kLinkCount = 8;
inline constexpr std::array<LinkType, kLinkCount> kAllLinks = {
    LinkType::ConvMacro,  LinkType::ConvSmall,  LinkType::ConvBiased, LinkType::SplitMacro,
    LinkType::SplitData2, LinkType::SplitCtrl2, LinkType::SplitDataB, LinkType::SplitCtrlB};

inline constexpr std::size_t linkIndex(LinkType l) { return static_cast<std::size_t>(l); }
std::string_view linkName(LinkType l);
LinkType parseLinkName(std::string_view name);

// Association set of the user the link belongs to, and the distance law of
// the link's serving transmitter.
UserSet linkUserSet(LinkType l);
DistanceLink linkDistance(LinkType l);

inline double dbToLinear(double db) { return std::pow(10.0, db / 10.0); }
double linearToDb(double x);

struct CoverageCurve {
    std::vector<double> thresholds;     // linear
    std::vector<double> probabilities;
};

struct SpectralEfficiencies {
    std::array<double, kLinkCount> values{};
    double operator[](LinkType l) const { return values[linkIndex(l)]; }
};

struct CoverageReport {
    std::vector<double> thresholdsDb;
    std::array<CoverageCurve, kLinkCount> curves;
    SpectralEfficiencies spectralEfficiency;
};

// Holds the association probabilities and distance laws of one configuration
// so repeated evaluations avoid recomputing them. Immutable once built.
class CoverageModel {
public:
    explicit CoverageModel(const NetworkConfig& net);

    const NetworkConfig& network() const { return net_; }
    const AssociationProbabilities& association() const { return assoc_; }

    // Closed form when alpha1 = alpha2 = 4, Laplace-functional integral otherwise.
    double coverage(LinkType link, double theta) const;
    double coverageClosedForm(LinkType link, double theta) const;
    double coverageIntegral(LinkType link, double theta) const;

    // E[ln(1 + SINR)] in nats/s/Hz.
    double spectralEfficiency(LinkType link) const;
    double spectralEfficiencyClosedForm(LinkType link) const;
    double spectralEfficiencyIntegral(LinkType link) const;

    SpectralEfficiencies spectralEfficiencies() const;

private:
    struct Exponent {
        double quadratic = 0;  // coefficient of r^2
        double cross = 0;      // coefficient of r^crossPower
        double crossPower = 2;
    };

    Exponent interference(LinkType link, double theta) const;
    double integrateOverDistance(LinkType link, const Exponent& e) const;

    NetworkConfig net_;
    AssociationProbabilities assoc_;
    std::array<DistancePdf, 5> pdfs_;
};

double coverage(LinkType link, double theta, const NetworkConfig& net);
double spectralEfficiency(LinkType link, const NetworkConfig& net);
SpectralEfficiencies spectralEfficiencies(const NetworkConfig& net);

// gridDb must be strictly increasing.
CoverageCurve coverageCurve(LinkType link, std::span<const double> thresholdGridDb, const NetworkConfig& net);
CoverageReport coverageReport(const NetworkConfig& net, std::span<const double> thresholdGridDb);

}  // namespace hetnet
