#include <doctest.h>

#include <cmath>
#include <cstring>

#include "hetnet/config.hpp"
#include "hetnet/config_io.hpp"

using namespace hetnet;

namespace {

bool hasViolation(const ValidationResult& r, const std::string& field, const std::string& message) {
    for (const auto& v : r.violations)
        if (v.field == field && v.message == message) return true;
    return false;
}

}  // namespace

TEST_CASE("default parameters validate") {
    ModelConfig cfg;
    CHECK(validate(cfg).ok());
    CHECK(cfg.network.lambda1 == doctest::Approx(2e-6));
    CHECK(cfg.split.w2() == doctest::Approx(8e6));
}

TEST_CASE("each violated invariant is reported by name") {
    ModelConfig cfg;
    cfg.network.alpha1 = 2.0;
    auto r = validate(cfg);
    CHECK_FALSE(r.ok());
    CHECK(hasViolation(r, "alpha1", "alpha1 must exceed 2"));

    cfg = ModelConfig{};
    cfg.split.w1 = cfg.split.wTotal;
    r = validate(cfg);
    CHECK(hasViolation(r, "w1", "w1 must be strictly less than wTotal"));

    cfg = ModelConfig{};
    cfg.network.bias = 0.5;
    cfg.network.lambda2 = -1;
    cfg.mobility.probX2Conv = 1.5;
    cfg.split.muC = 1.0;
    r = validate(cfg);
    CHECK(r.violations.size() == 4);
    CHECK_THROWS_AS(requireValid(cfg), ModelError);
}

TEST_CASE("NaN is rejected, not clamped") {
    ModelConfig cfg;
    cfg.network.p1 = std::nan("");
    CHECK(hasViolation(validate(cfg), "p1", "p1 must be positive"));
}

TEST_CASE("derived ratios") {
    NetworkConfig n;
    auto d = derivedRatios(n);
    CHECK(d.p12 == doctest::Approx(10.0));
    CHECK(d.p12Tilde == doctest::Approx(1.0 / 3.0));
    CHECK(d.p12 * d.p21 == doctest::Approx(1.0));
    CHECK(d.p21Tilde == doctest::Approx(3.0));

    n.p1 = n.p2 = 7;
    n.bias = 1;
    d = derivedRatios(n);
    CHECK(d.p12 == 1.0);
    CHECK(d.p21 == 1.0);
    CHECK(d.p12Tilde == 1.0);
    CHECK(d.p21Tilde == 1.0);

    n = NetworkConfig{};
    n.bias = 1;
    d = derivedRatios(n);
    CHECK(d.p12Tilde == d.p12);

    auto a = derivedRatios(NetworkConfig{});
    auto b = derivedRatios(NetworkConfig{});
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("config text uses external units and converts once") {
    auto cfg = parseConfigText("[network]\nlambda2 = 150\nbias=10\n[mobility]\nvelocity = 360\n", UnitSystem::Paper);
    CHECK(cfg.network.lambda2 == doctest::Approx(150e-6));
    CHECK(cfg.network.bias == 10.0);
    CHECK(cfg.mobility.velocity == doctest::Approx(100.0));
    CHECK(cfg.network.lambda1 == doctest::Approx(2e-6));

    auto si = parseConfigText("[split]\nw1 = 4e6\n", UnitSystem::SI);
    CHECK(si.split.w1 == 4e6);
    CHECK(getParameter(si, "w1", UnitSystem::Paper) == doctest::Approx(4.0));
}

TEST_CASE("config text errors") {
    CHECK_THROWS_AS(parseConfigText("[network]\nlambda9 = 1\n", UnitSystem::Paper), ModelError);
    CHECK_THROWS_AS(parseConfigText("[network]\nlambda1 = fast\n", UnitSystem::Paper), ModelError);
    CHECK_THROWS_AS(parseConfigText("[network\n", UnitSystem::Paper), ModelError);
    CHECK_THROWS_AS(loadConfigFile("/nonexistent/config.ini", UnitSystem::Paper), ModelError);
    CHECK_THROWS_AS(parseUnitSystem("imperial"), ModelError);
}

TEST_CASE("parameter overrides and hashing") {
    ModelConfig cfg;
    setParameter(cfg, "lambda2", 10, UnitSystem::Paper);
    CHECK(cfg.network.lambda2 == doctest::Approx(1e-5));
    setParameter(cfg, "mobility.probX2Conv", 0.25, UnitSystem::SI);
    CHECK(cfg.mobility.probX2Conv == 0.25);
    CHECK_THROWS_AS(setParameter(cfg, "nonsense", 1, UnitSystem::SI), ModelError);

    CHECK(configHash(ModelConfig{}) == configHash(ModelConfig{}));
    CHECK(configHash(cfg) != configHash(ModelConfig{}));
    CHECK(configHashHex(cfg).size() == 16);
}
