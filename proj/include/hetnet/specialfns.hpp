#pragma once

#include <cstddef>
#include <functional>

#include "hetnet/config.hpp"

namespace hetnet {

class QuadratureError : public ModelError {
public:
    using ModelError::ModelError;
};

struct QuadratureSpec {
    double relTol = 1e-9;
    double absTol = 1e-12;
    std::size_t maxSubdivisions = 2000;
};

struct QuadratureResult {
    double value = 0;
    double errorEstimate = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod over [0, inf). `scale` is the characteristic length
// of the integrand; the integral is evaluated in the variable x/scale so the
// interval map sees an O(1) decay length. Throws QuadratureError when the
// tolerance is not met. Integrands must not throw.
QuadratureResult integrateSemiInfinite(const Integrand& f, const QuadratureSpec& spec = {},
                                       double scale = 1.0);

QuadratureResult integrateFinite(const Integrand& f, double a, double b,
                                 const QuadratureSpec& spec = {});

// 2F1(1, 1-2/alpha; 2-2/alpha; -z) for alpha > 2, z >= 0.
double hypGeomFactor(double alpha, double z);

// a + sqrt(b) * atan(sqrt(b))
double rho(double a, double b);

// (1/x^2) * integral over [0, pi] of sqrt(x^2 + 1 - 2 x cos(t)) dt
double geometryFactor(double x);

}  // namespace hetnet
