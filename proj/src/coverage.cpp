#include "hetnet/coverage.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "hetnet/specialfns.hpp"
#include "model_quadrature.hpp"

namespace hetnet {

std::string_view linkName(LinkType l) {
    switch (l) {
        case LinkType::ConvMacro: return "conv_macro";
        case LinkType::ConvSmall: return "conv_small";
        case LinkType::ConvBiased: return "conv_biased";
        case LinkType::SplitMacro: return "split_macro";
        case LinkType::SplitData2: return "split_data2";
        case LinkType::SplitCtrl2: return "split_ctrl2";
        case LinkType::SplitDataB: return "split_dataB";
        case LinkType::SplitCtrlB: return "split_ctrlB";
    }
    return "?";
}

LinkType parseLinkName(std::string_view name) {
    for (auto l : kAllLinks)
        if (linkName(l) == name) return l;
    throw ModelError(fmt::format("unknown link type '{}'", name));
}

UserSet linkUserSet(LinkType l) {
    switch (l) {
        case LinkType::ConvMacro:
        case LinkType::SplitMacro: return UserSet::Set1;
        case LinkType::ConvSmall:
        case LinkType::SplitData2:
        case LinkType::SplitCtrl2: return UserSet::Set2;
        default: return UserSet::SetB;
    }
}

DistanceLink linkDistance(LinkType l) {
    switch (l) {
        case LinkType::ConvMacro:
        case LinkType::SplitMacro: return DistanceLink::R1;
        case LinkType::ConvSmall:
        case LinkType::SplitData2: return DistanceLink::R2;
        case LinkType::SplitCtrl2: return DistanceLink::Rc2;
        case LinkType::SplitCtrlB: return DistanceLink::RcB;
        default: return DistanceLink::RB;
    }
}

double linearToDb(double x) { return 10.0 * std::log10(x); }

namespace {

// Biased data users see the same SINR law in both architectures, so both
// names are served by one code path.
LinkType canonical(LinkType l) { return l == LinkType::SplitDataB ? LinkType::ConvBiased : l; }

void requireTheta(double theta) {
    if (!(theta > 0) || !std::isfinite(theta)) throw ModelError("coverage threshold must be positive and finite");
}

}  // namespace

CoverageModel::CoverageModel(const NetworkConfig& net)
    : net_(net),
      assoc_(associationProbabilities(net)),
      pdfs_{DistancePdf(DistanceLink::R1, net, assoc_), DistancePdf(DistanceLink::R2, net, assoc_),
            DistancePdf(DistanceLink::RB, net, assoc_), DistancePdf(DistanceLink::Rc2, net, assoc_),
            DistancePdf(DistanceLink::RcB, net, assoc_)} {}

CoverageModel::Exponent CoverageModel::interference(LinkType link, double theta) const {
    const auto& n = net_;
    // 2 pi lambda_k / (alpha_k - 2)
    const double lt1 = 2.0 * std::numbers::pi * n.lambda1 / (n.alpha1 - 2.0);
    const double lt2 = 2.0 * std::numbers::pi * n.lambda2 / (n.alpha2 - 2.0);
    Exponent e;
    switch (canonical(link)) {
        case LinkType::ConvMacro: {
            e.quadratic = lt1 * theta * hypGeomFactor(n.alpha1, theta);
            const double k = std::pow(n.p2 / n.p1, 2.0 / n.alpha2) * std::pow(n.bias, 2.0 / n.alpha2 - 1.0);
            e.cross = lt2 * theta * k * hypGeomFactor(n.alpha2, theta / n.bias);
            e.crossPower = 2.0 * n.alpha1 / n.alpha2;
            break;
        }
        case LinkType::ConvSmall: {
            e.quadratic = lt2 * theta * hypGeomFactor(n.alpha2, theta);
            const double k = std::pow(n.p1 / n.p2, 2.0 / n.alpha1);
            e.cross = lt1 * theta * k * hypGeomFactor(n.alpha1, theta);
            e.crossPower = 2.0 * n.alpha2 / n.alpha1;
            break;
        }
        case LinkType::ConvBiased:
        case LinkType::SplitData2:
            e.quadratic = lt2 * theta * hypGeomFactor(n.alpha2, theta);
            break;
        default:  // macro-transmitted links on W1 see only macro interference
            e.quadratic = lt1 * theta * hypGeomFactor(n.alpha1, theta);
            break;
    }
    return e;
}

double CoverageModel::integrateOverDistance(LinkType link, const Exponent& e) const {
    const auto& pdf = pdfs_[static_cast<std::size_t>(linkDistance(canonical(link)))];
    const double s0 = pdf.scale();
    const double scale = s0 / std::sqrt(1.0 + (e.quadratic + e.cross) * s0 * s0);
    auto f = [&](double r) {
        const double x = e.quadratic * r * r + (e.cross != 0 ? e.cross * std::pow(r, e.crossPower) : 0.0);
        return pdf(r) * std::exp(-x);
    };
    return integrateSemiInfinite(f, detail::kModelQuadrature, scale).value;
}

double CoverageModel::coverageIntegral(LinkType link, double theta) const {
    requireTheta(theta);
    return integrateOverDistance(link, interference(link, theta));
}

double CoverageModel::coverageClosedForm(LinkType link, double theta) const {
    requireTheta(theta);
    if (!net_.fourthPowerLaw()) throw ModelError("closed-form coverage requires alpha1 = alpha2 = 4");
    const auto d = derivedRatios(net_);
    const double l1 = net_.lambda1, l2 = net_.lambda2;
    const double rh = rho(1.0, theta);
    const double s21t = std::sqrt(d.p21Tilde), s21 = std::sqrt(d.p21);
    const double s12t = std::sqrt(d.p12Tilde), s12 = std::sqrt(d.p12);
    switch (canonical(link)) {
        case LinkType::ConvMacro:
            return (l1 + l2 * s21t) / (l1 * rh + l2 * s21t * rho(1.0, theta / net_.bias));
        case LinkType::ConvSmall:
            return 1.0 / rh;
        case LinkType::ConvBiased:
            return (l2 / assoc_.aB) * l1 * (s12 - s12t) / ((l1 * s12t + l2 * rh) * (l1 * s12 + l2 * rh));
        case LinkType::SplitMacro:
            return (l1 + l2 * s21t) / (l1 * rh + l2 * s21t);
        case LinkType::SplitData2:
            return (l2 + l1 * s12) / (l2 * rh + l1 * s12);
        case LinkType::SplitCtrl2:
            return (1.0 / assoc_.a2) * l2 * s21 / (rh * (l1 * rh + l2 * s21));
        case LinkType::SplitCtrlB:
            return (l1 / assoc_.aB) * l2 * (s21t - s21) / ((l1 * rh + l2 * s21) * (l1 * rh + l2 * s21t));
        default:
            break;
    }
    throw ModelError("unhandled link type");
}

double CoverageModel::coverage(LinkType link, double theta) const {
    return net_.fourthPowerLaw() ? coverageClosedForm(link, theta) : coverageIntegral(link, theta);
}

double CoverageModel::spectralEfficiencyClosedForm(LinkType link) const {
    if (!net_.fourthPowerLaw()) throw ModelError("closed-form spectral efficiency requires alpha1 = alpha2 = 4");
    auto f = [&](double t) { return t > 0 ? coverageClosedForm(link, t) / (t + 1.0) : 1.0; };
    return integrateSemiInfinite(f, detail::kModelQuadrature).value;
}

double CoverageModel::spectralEfficiencyIntegral(LinkType link) const {
    // Inner distance integral at fixed t; the hypergeometric factors depend
    // only on t and are evaluated once per outer node.
    auto f = [&](double t) {
        if (!(t > 0)) return 1.0;
        return integrateOverDistance(link, interference(link, t)) / (t + 1.0);
    };
    return integrateSemiInfinite(f, detail::kOuterQuadrature).value;
}

double CoverageModel::spectralEfficiency(LinkType link) const {
    return net_.fourthPowerLaw() ? spectralEfficiencyClosedForm(link) : spectralEfficiencyIntegral(link);
}

SpectralEfficiencies CoverageModel::spectralEfficiencies() const {
    SpectralEfficiencies se;
    for (auto l : kAllLinks) {
        if (l == LinkType::SplitDataB)
            se.values[linkIndex(l)] = se.values[linkIndex(LinkType::ConvBiased)];
        else
            se.values[linkIndex(l)] = spectralEfficiency(l);
    }
    return se;
}

double coverage(LinkType link, double theta, const NetworkConfig& net) {
    return CoverageModel(net).coverage(link, theta);
}

double spectralEfficiency(LinkType link, const NetworkConfig& net) {
    return CoverageModel(net).spectralEfficiency(link);
}

SpectralEfficiencies spectralEfficiencies(const NetworkConfig& net) { return CoverageModel(net).spectralEfficiencies(); }

namespace {

void requireIncreasing(std::span<const double> grid) {
    if (grid.empty()) throw ModelError("threshold grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ModelError("threshold grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ModelError("threshold grid must be strictly increasing");
    }
}

CoverageCurve curveFor(const CoverageModel& m, LinkType link, std::span<const double> gridDb) {
    CoverageCurve c;
    c.thresholds.reserve(gridDb.size());
    c.probabilities.reserve(gridDb.size());
    for (double db : gridDb) {
        const double theta = dbToLinear(db);
        c.thresholds.push_back(theta);
        c.probabilities.push_back(m.coverage(link, theta));
    }
    return c;
}

}  // namespace

CoverageCurve coverageCurve(LinkType link, std::span<const double> gridDb, const NetworkConfig& net) {
    requireIncreasing(gridDb);
    return curveFor(CoverageModel(net), link, gridDb);
}

CoverageReport coverageReport(const NetworkConfig& net, std::span<const double> gridDb) {
    requireIncreasing(gridDb);
    CoverageModel m(net);
    CoverageReport r;
    r.thresholdsDb.assign(gridDb.begin(), gridDb.end());
    for (auto l : kAllLinks) r.curves[linkIndex(l)] = curveFor(m, l, gridDb);
    r.spectralEfficiency = m.spectralEfficiencies();
    return r;
}

}  // namespace hetnet
