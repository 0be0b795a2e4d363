#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

// Unit conversions between the external (per-km², km/h, MHz) convention and
// the SI values used everywhere internally.
namespace units {
inline constexpr double kPerKm2 = 1e-6;      // 1 /km² in /m²
inline constexpr double kPerKm = 1e-3;       // 1 /km in /m
inline constexpr double kKmh = 1.0 / 3.6;    // 1 km/h in m/s
inline constexpr double kMHz = 1e6;
inline constexpr double kKm = 1e3;
}  // namespace units

// Thrown for invalid parameters or numerical failure inside the model.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Architecture { Conventional, Split };

inline const char* architectureName(Architecture a) { return a == Architecture::Conventional ? "conventional" : "split"; }

struct NetworkConfig {
    double lambda1 = 2.0 * units::kPerKm2;   // macro BS density (1/m²)
    double lambda2 = 50.0 * units::kPerKm2;  // small BS density (1/m²)
    double lambdaU = 50.0 * units::kPerKm2;  // user density (1/m²)
    double p1 = 50.0;                        // W
    double p2 = 5.0;                         // W
    double alpha1 = 4.0;
    double alpha2 = 4.0;
    double bias = 30.0;                      // linear
    double noise = 0.0;                      // W

    bool fourthPowerLaw() const { return alpha1 == 4.0 && alpha2 == 4.0; }
};

struct SplitConfig {
    double wTotal = 10.0 * units::kMHz;
    double w1 = 2.0 * units::kMHz;
    double muC = 0.3;
    double gamma = 3.0;
    double eta = 0.3;

    double w2() const { return wTotal - w1; }
};

struct MobilityConfig {
    double velocity = 0.0;         // m/s
    double dConv = 0.7;            // s
    double dConvX2 = 0.35;
    double dInterAnchor = 0.7;
    double dInterAnchorX2 = 0.35;
    double dIntraAnchor = 0.35;
    double probX2Conv = 0.0;
    double probX2Split = 0.0;
};

struct ModelConfig {
    NetworkConfig network;
    SplitConfig split;
    MobilityConfig mobility;
};

struct DerivedRatios {
    double p12 = 1.0;
    double p21 = 1.0;
    double p12Tilde = 1.0;
    double p21Tilde = 1.0;
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationResult validate(const NetworkConfig& net);
ValidationResult validate(const ModelConfig& cfg);

// Throws ModelError listing every violation.
void requireValid(const NetworkConfig& net);
void requireValid(const ModelConfig& cfg);

DerivedRatios derivedRatios(const NetworkConfig& net);

}  // namespace hetnet
