#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/config.hpp"

namespace hetnet {

// Paper units: densities per km², velocity in km/h, bandwidth in MHz.
// Everything else (W, s, dimensionless) is identical in both systems.
enum class UnitSystem { SI, Paper };

UnitSystem parseUnitSystem(std::string_view name);
const char* unitSystemName(UnitSystem u);

struct ParameterInfo {
    const char* section;
    const char* key;
    const char* siUnit;
    const char* paperUnit;
    double paperScale;  // SI value = external value * paperScale in Paper units
    double& (*ref)(ModelConfig&);
};

const std::vector<ParameterInfo>& parameterTable();

// Accepts "section.key" or a bare key when unambiguous.
const ParameterInfo& findParameter(std::string_view name);

double toSI(const ParameterInfo& p, double external, UnitSystem u);
double fromSI(const ParameterInfo& p, double si, UnitSystem u);

void setParameter(ModelConfig& cfg, std::string_view name, double external, UnitSystem u);
double getParameter(const ModelConfig& cfg, std::string_view name, UnitSystem u);

// INI-style file with [network], [split] and [mobility] sections. Missing keys
// keep their defaults; unknown keys are an error. Throws ModelError.
ModelConfig loadConfigFile(const std::string& path, UnitSystem u);
ModelConfig parseConfigText(const std::string& text, UnitSystem u);

// Stable textual dump in SI units (round-trip exact), used for hashing.
std::string canonicalText(const ModelConfig& cfg);
std::uint64_t configHash(const ModelConfig& cfg);
std::string configHashHex(const ModelConfig& cfg);

}  // namespace hetnet
