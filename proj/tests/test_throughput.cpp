#include <doctest.h>

#include <cmath>
#include <limits>

#include "hetnet/throughput.hpp"

using namespace hetnet;
using units::kPerKm2;

namespace {

ModelConfig withSmallDensity(double perKm2) {
    ModelConfig c;
    c.network.lambda2 = perKm2 * kPerKm2;
    return c;
}

}  // namespace

TEST_CASE("spectral efficiencies and loads against scripted reference values") {
    ThroughputModel m{ModelConfig{}};
    const auto& se = m.spectralEfficiencies();
    CHECK(se[LinkType::ConvMacro] == doctest::Approx(3.8797618043221704).epsilon(1e-7));
    CHECK(se[LinkType::ConvSmall] == doctest::Approx(1.4889876246658145).epsilon(1e-7));
    CHECK(se[LinkType::ConvBiased] == doctest::Approx(0.6876854898410513).epsilon(1e-7));
    CHECK(se[LinkType::SplitMacro] == doctest::Approx(6.883814900131112).epsilon(1e-7));
    CHECK(se[LinkType::SplitData2] == doctest::Approx(1.5911053557094572).epsilon(1e-7));
    CHECK(se[LinkType::SplitCtrl2] == doctest::Approx(1.1544136422253586).epsilon(1e-7));
    CHECK(se[LinkType::SplitCtrlB] == doctest::Approx(3.4421676245111765).epsilon(1e-7));
    CHECK(m.loads().n2 == doctest::Approx(2.136271731503434).epsilon(1e-12));
    CHECK(m.loads().nB == doctest::Approx(1.114835191739787).epsilon(1e-12));
}

TEST_CASE("conventional tier throughputs") {
    ModelConfig c;
    ThroughputModel m(c);
    auto t = m.conventional();
    CHECK(t.t1 == doctest::Approx(0.7 * 0.7 * 1e7 * m.spectralEfficiencies()[LinkType::ConvMacro]).epsilon(1e-14));

    c.split.eta = 0;
    t = conventionalTierThroughputs(c);
    const auto& se = m.spectralEfficiencies();
    CHECK(t.tB == 0.0);
    CHECK(t.t1 == doctest::Approx(0.7 * 1e7 * se[LinkType::ConvMacro]).epsilon(1e-14));
    CHECK(t.t2 == doctest::Approx(0.7 * 1e7 * se[LinkType::ConvSmall]).epsilon(1e-14));

    // control fraction approaching the whole capacity leaves nothing for data
    c = ModelConfig{};
    c.split.muC = 1.0 - 1e-12;
    t = conventionalTierThroughputs(c);
    CHECK(t.t1 < 1e-4);
    CHECK(t.t2 < 1e-4);
    CHECK(t.tB < 1e-4);

    ModelConfig w;
    w.split.wTotal *= 2;
    w.split.w1 *= 2;
    const auto t2 = conventionalTierThroughputs(w);
    const auto t1 = conventionalTierThroughputs(ModelConfig{});
    CHECK(t2.t1 == doctest::Approx(2 * t1.t1).epsilon(1e-14));
}

TEST_CASE("split macro rate limits") {
    auto c = withSmallDensity(1e-9);
    ThroughputModel sparse(c);
    const double free = 0.7 * 2e6 * sparse.spectralEfficiencies()[LinkType::SplitMacro];
    CHECK(sparse.split().t1 == doctest::Approx(free).epsilon(1e-6));

    c = ModelConfig{};
    c.split.gamma = 1e300;
    ThroughputModel cheap(c);
    CHECK(cheap.split().t1 == doctest::Approx(0.7 * 2e6 * cheap.spectralEfficiencies()[LinkType::SplitMacro]).epsilon(1e-12));

    const auto t = ThroughputModel(ModelConfig{}).split();
    CHECK(t.t2 == doctest::Approx(0.7 * 8e6 * 1.5911053557094572).epsilon(1e-7));
}

TEST_CASE("feasibility report") {
    ModelConfig c;
    c.split.muC = 0.0;
    auto f = feasibility(c);
    CHECK(f.feasible);
    CHECK(std::isinf(f.rhs));

    // scripted reference: feasible at 1 /km^2, already infeasible at lambda2 = lambda1
    auto one = feasibility(withSmallDensity(1));
    CHECK(one.feasible);
    CHECK(one.margin == doctest::Approx(2.2077930554848955).epsilon(1e-6));
    auto two = feasibility(withSmallDensity(2));
    CHECK_FALSE(two.feasible);
    CHECK(two.margin == doctest::Approx(-3.2439237740808995).epsilon(1e-6));
    CHECK(two.margin == doctest::Approx(two.rhs - two.lhs).epsilon(1e-15));
}

TEST_CASE("macro-rate bracket and feasibility margin agree in sign") {
    for (double l2 : {0.3, 1.0, 1.3, 1.4, 2.0, 10.0, 50.0, 200.0}) {
        for (double gamma : {1.0, 3.0, 10.0}) {
            auto c = withSmallDensity(l2);
            c.split.gamma = gamma;
            ThroughputModel m(c);
            const auto f = m.feasibility();
            const double factor = m.macroShareFactor();
            CHECK((factor >= 0) == (f.margin >= 0));
            CHECK(m.split().macroClamped == (factor < 0));
            CHECK(m.split().t1 >= 0.0);
        }
    }
}

TEST_CASE("breaking density by bisection") {
    ModelConfig c;
    auto b = breakingDensity(c, 0.01 * kPerKm2, 200 * kPerKm2);
    REQUIRE(b.found);
    CHECK(b.upper / b.lower - 1.0 <= 0.01);
    CHECK(b.iterations <= 60);
    CHECK(b.lambda2 > 1.0 * kPerKm2);
    CHECK(b.lambda2 < 2.0 * kPerKm2);

    // the macro rate vanishes across the breaking density
    auto lo = c, hi = c;
    lo.network.lambda2 = b.lower;
    hi.network.lambda2 = b.upper;
    CHECK(splitTierThroughputs(lo).t1 >= 0.0);
    CHECK_FALSE(splitTierThroughputs(lo).macroClamped);
    CHECK(splitTierThroughputs(hi).t1 == 0.0);
    CHECK(splitTierThroughputs(hi).macroClamped);

    CHECK_FALSE(breakingDensity(c, 10 * kPerKm2, 200 * kPerKm2).found);
    CHECK_THROWS_AS(breakingDensity(c, 0.0, 1.0), ModelError);
}

TEST_CASE("per-user throughput with handover penalty") {
    ModelConfig c = withSmallDensity(150);
    auto still = averageUserThroughput(c, Architecture::Conventional);
    CHECK(still.value == still.stationary);
    CHECK_FALSE(still.saturated);

    c.mobility.velocity = 100.0;  // 360 km/h
    c.split.gamma = 1.0;
    auto conv = averageUserThroughput(c, Architecture::Conventional);
    auto split = averageUserThroughput(c, Architecture::Split);
    CHECK(conv.saturated);
    CHECK(conv.value == 0.0);
    CHECK(conv.handoverCost == doctest::Approx(1.0989332385818888).epsilon(1e-9));
    CHECK(split.handoverCost == doctest::Approx(0.6124887614219419).epsilon(1e-9));
    CHECK(split.value > conv.value);
    CHECK(split.value == doctest::Approx(2271332.331159328).epsilon(1e-6));
}

TEST_CASE("per-user throughput decreases with speed") {
    ModelConfig c = withSmallDensity(50);
    for (auto a : {Architecture::Conventional, Architecture::Split}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double kmh : {0.0, 10.0, 50.0, 108.0, 200.0, 360.0, 500.0}) {
            c.mobility.velocity = kmh * units::kKmh;
            const double v = averageUserThroughput(c, a).value;
            CHECK(v <= prev);
            CHECK(v >= 0.0);
            prev = v;
        }
    }
}

TEST_CASE("stationary conventional throughput ignores mobility parameters") {
    ModelConfig a;
    ModelConfig b;
    b.mobility.dConv = 3.0;
    b.mobility.dConvX2 = 0.01;
    b.mobility.dIntraAnchor = 0.0;
    b.mobility.probX2Conv = 0.7;
    b.mobility.probX2Split = 0.2;
    CHECK(averageUserThroughput(a, Architecture::Conventional).value ==
          averageUserThroughput(b, Architecture::Conventional).value);
}

TEST_CASE("macro-user throughput turning point search") {
    auto tp = macroTurningPoint(ModelConfig{}, 0.1 * kPerKm2, 200 * kPerKm2, 40);
    CHECK(tp.value > 0.0);
    CHECK_THROWS_AS(macroTurningPoint(ModelConfig{}, 1.0, 0.5, 10), ModelError);
}
