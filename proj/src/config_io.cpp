#include "hetnet/config_io.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hetnet {

namespace pt = boost::property_tree;

UnitSystem parseUnitSystem(std::string_view name) {
    if (name == "si") return UnitSystem::SI;
    if (name == "paper") return UnitSystem::Paper;
    throw ModelError(fmt::format("unknown unit system '{}' (expected si or paper)", name));
}

const char* unitSystemName(UnitSystem u) { return u == UnitSystem::SI ? "si" : "paper"; }

const std::vector<ParameterInfo>& parameterTable() {
    using units::kKmh;
    using units::kMHz;
    using units::kPerKm2;
    static const std::vector<ParameterInfo> table = {
        {"network", "lambda1", "1/m^2", "1/km^2", kPerKm2, [](ModelConfig& c) -> double& { return c.network.lambda1; }},
        {"network", "lambda2", "1/m^2", "1/km^2", kPerKm2, [](ModelConfig& c) -> double& { return c.network.lambda2; }},
        {"network", "lambdaU", "1/m^2", "1/km^2", kPerKm2, [](ModelConfig& c) -> double& { return c.network.lambdaU; }},
        {"network", "p1", "W", "W", 1.0, [](ModelConfig& c) -> double& { return c.network.p1; }},
        {"network", "p2", "W", "W", 1.0, [](ModelConfig& c) -> double& { return c.network.p2; }},
        {"network", "alpha1", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.network.alpha1; }},
        {"network", "alpha2", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.network.alpha2; }},
        {"network", "bias", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.network.bias; }},
        {"network", "noise", "W", "W", 1.0, [](ModelConfig& c) -> double& { return c.network.noise; }},
        {"split", "wTotal", "Hz", "MHz", kMHz, [](ModelConfig& c) -> double& { return c.split.wTotal; }},
        {"split", "w1", "Hz", "MHz", kMHz, [](ModelConfig& c) -> double& { return c.split.w1; }},
        {"split", "muC", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.split.muC; }},
        {"split", "gamma", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.split.gamma; }},
        {"split", "eta", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.split.eta; }},
        {"mobility", "velocity", "m/s", "km/h", kKmh, [](ModelConfig& c) -> double& { return c.mobility.velocity; }},
        {"mobility", "dConv", "s", "s", 1.0, [](ModelConfig& c) -> double& { return c.mobility.dConv; }},
        {"mobility", "dConvX2", "s", "s", 1.0, [](ModelConfig& c) -> double& { return c.mobility.dConvX2; }},
        {"mobility", "dInterAnchor", "s", "s", 1.0, [](ModelConfig& c) -> double& { return c.mobility.dInterAnchor; }},
        {"mobility", "dInterAnchorX2", "s", "s", 1.0, [](ModelConfig& c) -> double& { return c.mobility.dInterAnchorX2; }},
        {"mobility", "dIntraAnchor", "s", "s", 1.0, [](ModelConfig& c) -> double& { return c.mobility.dIntraAnchor; }},
        {"mobility", "probX2Conv", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.mobility.probX2Conv; }},
        {"mobility", "probX2Split", "-", "-", 1.0, [](ModelConfig& c) -> double& { return c.mobility.probX2Split; }},
    };
    return table;
}

const ParameterInfo& findParameter(std::string_view name) {
    const auto& table = parameterTable();
    auto dot = name.find('.');
    for (const auto& p : table) {
        if (dot == std::string_view::npos) {
            if (name == p.key) return p;
        } else if (name.substr(0, dot) == p.section && name.substr(dot + 1) == p.key) {
            return p;
        }
    }
    throw ModelError(fmt::format("unknown parameter '{}'", name));
}

double toSI(const ParameterInfo& p, double external, UnitSystem u) {
    return u == UnitSystem::Paper ? external * p.paperScale : external;
}

double fromSI(const ParameterInfo& p, double si, UnitSystem u) {
    return u == UnitSystem::Paper ? si / p.paperScale : si;
}

void setParameter(ModelConfig& cfg, std::string_view name, double external, UnitSystem u) {
    const auto& p = findParameter(name);
    p.ref(cfg) = toSI(p, external, u);
}

double getParameter(const ModelConfig& cfg, std::string_view name, UnitSystem u) {
    const auto& p = findParameter(name);
    auto copy = cfg;
    return fromSI(p, p.ref(copy), u);
}

namespace {

double parseNumber(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used == 0 || used != text.size())
        throw ModelError(fmt::format("{}: '{}' is not a number", where, text));
    return v;
}

ModelConfig fromTree(const pt::ptree& tree, UnitSystem u) {
    ModelConfig cfg;
    const auto& table = parameterTable();
    std::set<std::string> known;
    for (const auto& p : table) known.insert(std::string(p.section) + "." + p.key);

    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ModelError(fmt::format("key '{}' must be inside a section", section));
        for (const auto& [key, value] : body) {
            auto full = section + "." + key;
            if (!known.count(full)) throw ModelError(fmt::format("unknown configuration key '{}'", full));
            setParameter(cfg, full, parseNumber(value.data(), full), u);
        }
    }
    return cfg;
}

}  // namespace

ModelConfig parseConfigText(const std::string& text, UnitSystem u) {
    std::istringstream in(text);
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ModelError(fmt::format("config parse error: {}", e.what()));
    }
    return fromTree(tree, u);
}

ModelConfig loadConfigFile(const std::string& path, UnitSystem u) {
    std::ifstream in(path);
    if (!in) throw ModelError(fmt::format("cannot read config file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parseConfigText(ss.str(), u);
}

std::string canonicalText(const ModelConfig& cfg) {
    std::string out;
    auto copy = cfg;
    for (const auto& p : parameterTable())
        out += fmt::format("{}.{}={:.17g}\n", p.section, p.key, p.ref(copy));
    return out;
}

std::uint64_t configHash(const ModelConfig& cfg) {
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonicalText(cfg)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string configHashHex(const ModelConfig& cfg) { return fmt::format("{:016x}", configHash(cfg)); }

}  // namespace hetnet
