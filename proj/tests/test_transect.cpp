#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hetnet/mobility.hpp"
#include "hetnet/transect.hpp"

using namespace hetnet;
using units::kPerKm2;

namespace {

NetworkConfig withSmallDensity(double perKm2) {
    NetworkConfig n;
    n.lambda2 = perKm2 * kPerKm2;
    return n;
}

double relErr(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("single tier crossings match the Poisson-Voronoi rate") {
    TransectSpec s;
    s.minEventsPerClass = 20000;
    const auto r = transectHandovers(withSmallDensity(0), s);
    const auto& c = r.counts;
    CHECK(r.uncertified == 0);
    CHECK(c[HandoverClass::Conv11] >= 20000);
    CHECK(c[HandoverClass::Conv11] == c[HandoverClass::InterAnchor]);
    CHECK(c[HandoverClass::IntraAnchor] == 0);
    CHECK(c[HandoverClass::Conv22] == 0);
    const double expected = 4.0 * std::sqrt(2.0 * kPerKm2) / std::numbers::pi;
    CHECK(relErr(c.ratePerMetre(HandoverClass::Conv11), expected) < 0.03);
}

TEST_CASE("two-tier crossings match the analytic rates") {
    TransectSpec s;
    s.minEventsPerClass = 3000;
    const auto net = withSmallDensity(10);
    const auto r = transectHandovers(net, s);
    const auto h = handoverRates(net);
    CHECK(r.uncertified == 0);
    const auto& c = r.counts;
    CHECK(relErr(c.ratePerMetre(HandoverClass::Conv11), h.conv[0][0]) < 0.06);
    CHECK(relErr(c.ratePerMetre(HandoverClass::Conv12), h.conv[0][1]) < 0.04);
    CHECK(relErr(c.ratePerMetre(HandoverClass::Conv21), h.conv[1][0]) < 0.04);
    CHECK(relErr(c.ratePerMetre(HandoverClass::Conv22), h.conv[1][1]) < 0.04);
    CHECK(relErr(c.ratePerMetre(HandoverClass::InterAnchor), h.interAnchor) < 0.03);
    // serving changes without an anchor change
    const double intra = double(c[HandoverClass::Conv12] + c[HandoverClass::Conv21] + c[HandoverClass::Conv22]);
    CHECK(double(c[HandoverClass::IntraAnchor]) == doctest::Approx(intra).epsilon(0.01));
}

TEST_CASE("transect runs are deterministic and thread independent") {
    TransectSpec s;
    s.minEventsPerClass = 50;
    s.batchLines = 5;
    s.threads = 1;
    const auto net = withSmallDensity(50);
    const auto a = transectHandovers(net, s);
    s.threads = 4;
    const auto b = transectHandovers(net, s);
    CHECK(a.counts.events == b.counts.events);
    CHECK(a.counts.length == b.counts.length);
    CHECK(a.lines == b.lines);
    CHECK(a.lines % 5 == 0);
}

TEST_CASE("length cap stops the search") {
    TransectSpec s;
    s.minEventsPerClass = 1u << 30;
    s.lineLength = 10e3;
    s.maxLength = 50e3;
    s.batchLines = 2;
    const auto r = transectHandovers(withSmallDensity(50), s);
    CHECK(r.lines == 6);
}

TEST_CASE("transect needs a common path-loss exponent") {
    auto n = withSmallDensity(50);
    n.alpha2 = 3.5;
    CHECK_THROWS_AS(transectHandovers(n, TransectSpec{}), ModelError);
    TransectSpec bad;
    bad.batchLines = 0;
    CHECK_THROWS_AS(transectHandovers(withSmallDensity(50), bad), ModelError);
}
