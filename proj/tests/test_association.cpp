#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/specialfns.hpp"

using namespace hetnet;
using std::numbers::pi;

namespace {

NetworkConfig randomConfig(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NetworkConfig n;
    n.lambda1 = std::pow(10.0, -7.0 + 2.0 * u(rng));
    n.lambda2 = std::pow(10.0, -6.5 + 2.5 * u(rng));
    n.p1 = 1.0 + 99.0 * u(rng);
    n.p2 = 0.1 + 9.9 * u(rng);
    n.alpha1 = 2.3 + 2.7 * u(rng);
    n.alpha2 = 2.3 + 2.7 * u(rng);
    n.bias = 1.0 + 99.0 * u(rng);
    return n;
}

double rayleighDraw(std::mt19937_64& rng, double lambda) {
    std::exponential_distribution<double> e(pi * lambda);
    return std::sqrt(e(rng));
}

}  // namespace

TEST_CASE("classify examples") {
    NetworkConfig sym;
    sym.p1 = sym.p2 = 1.0;
    sym.bias = 1.0;
    CHECK(classify(50.0, 80.0, sym) == UserSet::Set1);
    CHECK(classify(80.0, 50.0, sym) == UserSet::Set2);

    NetworkConfig n;  // P1=50, P2=5, B=30, alpha=4
    CHECK(classify(100.0, 100.0, n) == UserSet::SetB);

    // 16 * 2^-4 == 1 * 1^-4 exactly: the tie belongs to the macro tier.
    NetworkConfig tie;
    tie.p1 = 16.0;
    tie.p2 = 1.0;
    tie.bias = 1.0;
    CHECK(classify(2.0, 1.0, tie) == UserSet::Set1);
}

TEST_CASE("classify partitions random distance pairs consistently") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1.0, 5000.0);
    NetworkConfig n;
    n.alpha1 = 3.7;
    n.alpha2 = 4.2;
    for (int i = 0; i < 20000; ++i) {
        const double r1 = u(rng), r2 = u(rng);
        const double s1 = n.p1 * std::pow(r1, -n.alpha1), s2 = n.p2 * std::pow(r2, -n.alpha2);
        const int inSet1 = s1 >= n.bias * s2;
        const int inSet2 = s2 > s1;
        const int inSetB = !inSet1 && !inSet2;
        REQUIRE(inSet1 + inSet2 + inSetB == 1);
        const UserSet expected = inSet1 ? UserSet::Set1 : inSet2 ? UserSet::Set2 : UserSet::SetB;
        REQUIRE(classify(r1, r2, n) == expected);
    }
}

TEST_CASE("association probabilities at the default configuration") {
    NetworkConfig n;
    auto a = associationProbabilities(n);
    CHECK(a.a1 == doctest::Approx(2.0 / (2.0 + 50.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(std::abs(a.sum() - 1.0) <= 1e-12);
    CHECK(a.a1 >= 0);
    CHECK(a.a2 >= 0);
    CHECK(a.aB >= 0);
}

TEST_CASE("closed form and integrals agree at the fourth-power law") {
    for (double l2 : {1e-6, 1e-5, 5e-5, 2e-4}) {
        for (double bias : {1.0, 4.0, 30.0}) {
            NetworkConfig n;
            n.lambda2 = l2;
            n.bias = bias;
            auto c = associationProbabilitiesClosedForm(n);
            auto q = associationProbabilitiesIntegral(n);
            CHECK(q.a1 == doctest::Approx(c.a1).epsilon(1e-6));
            CHECK(q.a2 == doctest::Approx(c.a2).epsilon(1e-6));
            if (bias > 1) CHECK(q.aB == doctest::Approx(c.aB).epsilon(1e-6));
        }
    }
}

TEST_CASE("unbiased network has an empty biased set") {
    NetworkConfig n;
    n.bias = 1.0;
    CHECK(associationProbabilitiesClosedForm(n).aB == 0.0);
    CHECK(std::abs(associationProbabilitiesIntegral(n).aB) <= 1e-14);
}

TEST_CASE("vanishing small tier leaves every user with the macro tier") {
    NetworkConfig n;
    n.lambda2 = 1e-15;
    CHECK(associationProbabilities(n).a1 == doctest::Approx(1.0).epsilon(1e-7));
    n.alpha1 = n.alpha2 = 3.3;
    CHECK(associationProbabilities(n).a1 == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("normalization over random general-exponent configurations") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        auto n = randomConfig(rng);
        auto a = associationProbabilitiesIntegral(n);
        CHECK(std::abs(a.sum() - 1.0) <= 1e-9);
        CHECK(a.aB >= -1e-12);
    }
}

TEST_CASE("stronger bias offloads users to the small tier") {
    for (double alpha : {4.0, 3.2}) {
        NetworkConfig n;
        n.alpha1 = n.alpha2 = alpha;
        double prev = -1;
        for (double bias : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
            n.bias = bias;
            auto a = associationProbabilities(n);
            CHECK(a.a2 + a.aB >= prev);
            prev = a.a2 + a.aB;
        }
    }
}

TEST_CASE("loads") {
    NetworkConfig n;
    auto l = loads(n);
    CHECK(l.n1 == doctest::Approx(1.28 * 50.0 / (2.0 + 50.0 * std::sqrt(3.0)) + 1.0).epsilon(1e-12));
    CHECK(l.n1 >= 1);
    CHECK(l.n2 >= 1);
    CHECK(l.nB >= 1);

    n.lambdaU = 0;
    l = loads(n);
    CHECK(l.n1 == 1.0);
    CHECK(l.n2 == 1.0);
    CHECK(l.nB == 1.0);

    NetworkConfig a, b;
    b.lambdaU = 2 * a.lambdaU;
    auto la = loads(a), lb = loads(b);
    CHECK(lb.n1 - 1 == doctest::Approx(2 * (la.n1 - 1)).epsilon(1e-14));
    CHECK(lb.n2 - 1 == doctest::Approx(2 * (la.n2 - 1)).epsilon(1e-14));
    CHECK(lb.nB - 1 == doctest::Approx(2 * (la.nB - 1)).epsilon(1e-14));
}

TEST_CASE("distance PDFs integrate to one") {
    NetworkConfig general;
    general.alpha1 = 3.5;
    general.alpha2 = 3.0;
    for (const auto& n : {NetworkConfig{}, general}) {
        for (auto d : {DistanceLink::R1, DistanceLink::R2, DistanceLink::RB, DistanceLink::Rc2, DistanceLink::RcB}) {
            auto pdf = distancePdf(d, n);
            auto res = integrateSemiInfinite([&](double r) { return pdf(r); }, {1e-11, 1e-14, 4000}, pdf.scale());
            CHECK(std::abs(res.value - 1.0) <= 1e-7);
            for (double r : {1.0, 100.0, 500.0, 3000.0}) CHECK(pdf(r) >= 0.0);
        }
    }
}

TEST_CASE("macro distance law reduces to the nearest-neighbour law") {
    NetworkConfig n;
    n.lambda2 = 1e-16;
    auto pdf = distancePdf(DistanceLink::R1, n);
    for (double r : {50.0, 200.0, 400.0, 900.0}) {
        const double rayleigh = 2 * pi * n.lambda1 * r * std::exp(-pi * n.lambda1 * r * r);
        CHECK(pdf(r) == doctest::Approx(rayleigh).epsilon(1e-8));
    }
}

TEST_CASE("control-link distance of Set2 users matches sampled nearest distances") {
    NetworkConfig n;
    auto pdf = distancePdf(DistanceLink::Rc2, n);
    std::mt19937_64 rng(77);
    std::vector<double> samples;
    while (samples.size() < 100000) {
        const double r1 = rayleighDraw(rng, n.lambda1), r2 = rayleighDraw(rng, n.lambda2);
        if (classify(r1, r2, n) == UserSet::Set2) samples.push_back(r1);
    }
    std::sort(samples.begin(), samples.end());

    // CDF by cumulative quadrature between consecutive probe points.
    double ks = 0, cdf = 0, prev = 0;
    const std::size_t probes = 400;
    for (std::size_t k = 1; k <= probes; ++k) {
        const double r = samples[k * (samples.size() - 1) / probes];
        cdf += integrateFinite([&](double x) { return pdf(x); }, prev, r, {1e-10, 1e-14, 200}).value;
        prev = r;
        const double emp = double(std::upper_bound(samples.begin(), samples.end(), r) - samples.begin()) /
                           double(samples.size());
        ks = std::max(ks, std::abs(emp - cdf));
    }
    CHECK(ks < 0.01);
}
