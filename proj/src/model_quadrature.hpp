#pragma once

#include "hetnet/specialfns.hpp"

namespace hetnet::detail {

// Shared by association and coverage so their error budgets compose.
inline const QuadratureSpec kModelQuadrature{1e-11, 1e-14, 4000};

// Outer integral of the double-integral spectral efficiency.
inline const QuadratureSpec kOuterQuadrature{1e-9, 1e-12, 4000};

}  // namespace hetnet::detail
