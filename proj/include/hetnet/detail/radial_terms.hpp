#pragma once

#include <cmath>
#include <numbers>

#include "hetnet/config.hpp"

namespace hetnet::detail {

// Void-probability exponents of the association regions, as functions of the
// distance r to the relevant nearest BS. With a1 = a2 every cross-tier term is
// proportional to r^2.
struct RadialTerms {
    double pl1, pl2;      // pi * lambda_k
    double pow12, pow21;  // 2 a1/a2 and 2 a2/a1
    double k21Tilde, k21, k12, k12Tilde;

    explicit RadialTerms(const NetworkConfig& n)
        : pl1(std::numbers::pi * n.lambda1),
          pl2(std::numbers::pi * n.lambda2),
          pow12(2.0 * n.alpha1 / n.alpha2),
          pow21(2.0 * n.alpha2 / n.alpha1),
          k21Tilde(std::pow(n.bias * n.p2 / n.p1, 2.0 / n.alpha2)),
          k21(std::pow(n.p2 / n.p1, 2.0 / n.alpha2)),
          k12(std::pow(n.p1 / n.p2, 2.0 / n.alpha1)),
          k12Tilde(std::pow(n.p1 / (n.bias * n.p2), 2.0 / n.alpha1)) {}

    // r is the macro distance
    double macroOnly(double r) const { return pl1 * r * r; }
    double set1(double r) const { return pl1 * r * r + pl2 * k21Tilde * std::pow(r, pow12); }
    double ctrl2Inner(double r) const { return pl1 * r * r + pl2 * k21 * std::pow(r, pow12); }

    // r is the small-cell distance
    double set2(double r) const { return pl2 * r * r + pl1 * k12 * std::pow(r, pow21); }
    double setBOuter(double r) const { return pl2 * r * r + pl1 * k12Tilde * std::pow(r, pow21); }
};

}  // namespace hetnet::detail
