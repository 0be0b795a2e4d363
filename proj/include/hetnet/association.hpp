#pragma once

#include <string_view>

#include "hetnet/config.hpp"
#include "hetnet/detail/radial_terms.hpp"

namespace hetnet {

// Set1: served by the macro tier. Set2: served by the small tier without help
// from the bias. SetB: served by the small tier only because of the bias.
enum class UserSet { Set1, Set2, SetB };

std::string_view userSetName(UserSet s);

// r1, r2: distances to the nearest macro and small BS (m).
UserSet classify(double r1, double r2, const NetworkConfig& net);

struct AssociationProbabilities {
    double a1 = 0;
    double a2 = 0;
    double aB = 0;

    double sum() const { return a1 + a2 + aB; }
    double operator[](UserSet s) const { return s == UserSet::Set1 ? a1 : s == UserSet::Set2 ? a2 : aB; }
};

struct LoadEstimates {
    double n1 = 1;
    double n2 = 1;
    double nB = 1;

    double operator[](UserSet s) const { return s == UserSet::Set1 ? n1 : s == UserSet::Set2 ? n2 : nB; }
};

// Closed form when alpha1 = alpha2 = 4, numerical integrals otherwise.
AssociationProbabilities associationProbabilities(const NetworkConfig& net);
AssociationProbabilities associationProbabilitiesClosedForm(const NetworkConfig& net);
AssociationProbabilities associationProbabilitiesIntegral(const NetworkConfig& net);

LoadEstimates loads(const NetworkConfig& net);
LoadEstimates loads(const NetworkConfig& net, const AssociationProbabilities& a);

// Serving distance for Set1/Set2/SetB users (R1, R2, RB) and the macro
// control-link distance of Set2/SetB users under the split architecture.
enum class DistanceLink { R1, R2, RB, Rc2, RcB };

std::string_view distanceLinkName(DistanceLink d);

class DistancePdf {
public:
    DistancePdf(DistanceLink link, const NetworkConfig& net, const AssociationProbabilities& a);

    DistanceLink link() const { return link_; }
    double operator()(double r) const;
    // Typical scale of the distribution (m); used as a quadrature hint.
    double scale() const { return scale_; }

private:
    DistanceLink link_;
    detail::RadialTerms terms_;
    double norm_ = 0;
    double scale_ = 1;
};

DistancePdf distancePdf(DistanceLink link, const NetworkConfig& net);

}  // namespace hetnet
