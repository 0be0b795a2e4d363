#include "hetnet/association.hpp"

#include <cmath>

#include "hetnet/detail/radial_terms.hpp"
#include "hetnet/specialfns.hpp"
#include "model_quadrature.hpp"

namespace hetnet {

using detail::RadialTerms;

std::string_view userSetName(UserSet s) {
    switch (s) {
        case UserSet::Set1: return "set1";
        case UserSet::Set2: return "set2";
        case UserSet::SetB: return "setB";
    }
    return "?";
}

std::string_view distanceLinkName(DistanceLink d) {
    switch (d) {
        case DistanceLink::R1: return "R1";
        case DistanceLink::R2: return "R2";
        case DistanceLink::RB: return "RB";
        case DistanceLink::Rc2: return "Rc2";
        case DistanceLink::RcB: return "RcB";
    }
    return "?";
}

UserSet classify(double r1, double r2, const NetworkConfig& net) {
    const double s1 = net.p1 * std::pow(r1, -net.alpha1);
    const double s2 = net.p2 * std::pow(r2, -net.alpha2);
    if (s1 >= net.bias * s2) return UserSet::Set1;
    if (s2 > s1) return UserSet::Set2;
    return UserSet::SetB;
}

AssociationProbabilities associationProbabilitiesClosedForm(const NetworkConfig& net) {
    requireValid(net);
    if (!net.fourthPowerLaw()) throw ModelError("closed-form association requires alpha1 = alpha2 = 4");
    const auto d = derivedRatios(net);
    const double l1 = net.lambda1, l2 = net.lambda2;
    AssociationProbabilities a;
    a.a1 = l1 / (l1 + l2 * std::sqrt(d.p21Tilde));
    a.a2 = l2 / (l1 * std::sqrt(d.p12) + l2);
    // difference of two set probabilities, written without cancellation
    const double s12 = std::sqrt(d.p12), s12t = std::sqrt(d.p12Tilde);
    a.aB = l2 * l1 * (s12 - s12t) / ((l1 * s12t + l2) * (l1 * s12 + l2));
    return a;
}

AssociationProbabilities associationProbabilitiesIntegral(const NetworkConfig& net) {
    requireValid(net);
    const RadialTerms t(net);
    const auto& q = detail::kModelQuadrature;
    AssociationProbabilities a;
    a.a1 = integrateSemiInfinite(
               [&](double r) { return 2.0 * t.pl1 * r * std::exp(-t.set1(r)); }, q,
               1.0 / std::sqrt(t.pl1 + t.pl2 * t.k21Tilde))
               .value;
    a.a2 = integrateSemiInfinite(
               [&](double r) { return 2.0 * t.pl2 * r * std::exp(-t.set2(r)); }, q,
               1.0 / std::sqrt(t.pl2 + t.pl1 * t.k12))
               .value;
    a.aB = integrateSemiInfinite(
               [&](double r) { return 2.0 * t.pl2 * r * (std::exp(-t.setBOuter(r)) - std::exp(-t.set2(r))); }, q,
               1.0 / std::sqrt(t.pl2 + t.pl1 * t.k12Tilde))
               .value;
    return a;
}

AssociationProbabilities associationProbabilities(const NetworkConfig& net) {
    return net.fourthPowerLaw() ? associationProbabilitiesClosedForm(net) : associationProbabilitiesIntegral(net);
}

LoadEstimates loads(const NetworkConfig& net, const AssociationProbabilities& a) {
    // 1.28 is the mean-area correction of the Poisson-Voronoi load model.
    const double k = 1.28 * net.lambdaU;
    LoadEstimates n;
    n.n1 = k * a.a1 / net.lambda1 + 1.0;
    n.n2 = k * a.a2 / net.lambda2 + 1.0;
    n.nB = k * a.aB / net.lambda2 + 1.0;
    return n;
}

LoadEstimates loads(const NetworkConfig& net) { return loads(net, associationProbabilities(net)); }

DistancePdf::DistancePdf(DistanceLink link, const NetworkConfig& net, const AssociationProbabilities& a)
    : link_(link), terms_(net) {
    const RadialTerms& t = terms_;
    double prob = 0;
    switch (link) {
        case DistanceLink::R1:
            prob = a.a1;
            scale_ = 1.0 / std::sqrt(t.pl1 + t.pl2 * t.k21Tilde);
            break;
        case DistanceLink::R2:
            prob = a.a2;
            scale_ = 1.0 / std::sqrt(t.pl2 + t.pl1 * t.k12);
            break;
        case DistanceLink::RB:
            prob = a.aB;
            scale_ = 1.0 / std::sqrt(t.pl2 + t.pl1 * t.k12Tilde);
            break;
        case DistanceLink::Rc2:
            prob = a.a2;
            scale_ = 1.0 / std::sqrt(t.pl1);
            break;
        case DistanceLink::RcB:
            prob = a.aB;
            scale_ = 1.0 / std::sqrt(t.pl1);
            break;
    }
    if (!(prob > 0)) throw ModelError("distance PDF undefined: association probability of the set is zero");
    norm_ = 1.0 / prob;
}

double DistancePdf::operator()(double r) const {
    if (!(r > 0)) return 0.0;
    const RadialTerms& t = terms_;
    switch (link_) {
        case DistanceLink::R1:
            return norm_ * 2.0 * t.pl1 * r * std::exp(-t.set1(r));
        case DistanceLink::R2:
            return norm_ * 2.0 * t.pl2 * r * std::exp(-t.set2(r));
        case DistanceLink::RB:
            return norm_ * 2.0 * t.pl2 * r * (std::exp(-t.setBOuter(r)) - std::exp(-t.set2(r)));
        case DistanceLink::Rc2:
            return norm_ * 2.0 * t.pl1 * r * (std::exp(-t.macroOnly(r)) - std::exp(-t.ctrl2Inner(r)));
        case DistanceLink::RcB:
            return norm_ * 2.0 * t.pl1 * r * (std::exp(-t.ctrl2Inner(r)) - std::exp(-t.set1(r)));
    }
    return 0.0;
}

DistancePdf distancePdf(DistanceLink link, const NetworkConfig& net) {
    return DistancePdf(link, net, associationProbabilities(net));
}

}  // namespace hetnet
