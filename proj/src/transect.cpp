#include "hetnet/transect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

// A BS seen from the line y = 0: foot point x and squared offset q, so the
// squared distance at t is (t - x)² + q.
struct Site {
    double x;
    double q;
};

struct Piece {
    double begin;
    double end;
    std::uint32_t owner;
};

std::vector<Site> stripSites(double lambda, double halfWidth, double from, double to, std::mt19937_64& rng) {
    std::vector<Site> s;
    if (!(lambda > 0)) return s;
    std::exponential_distribution<double> gap(lambda * 2.0 * halfWidth);
    std::uniform_real_distribution<double> off(-halfWidth, halfWidth);
    for (double x = from + gap(rng); x < to; x += gap(rng)) {
        const double y = off(rng);
        s.push_back({x, y * y});
    }
    return s;
}

// Lower envelope of (t - x_i)² + q_i for sites sorted by x, clipped to [0, len].
std::vector<Piece> envelope(const std::vector<Site>& s, double len) {
    std::vector<Piece> out;
    if (s.empty()) return out;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> v(s.size());
    std::vector<double> z(s.size() + 1);
    std::size_t k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (std::uint32_t i = 1; i < s.size(); ++i) {
        double cut;
        for (;;) {
            const Site& a = s[v[k]];
            cut = ((s[i].q + s[i].x * s[i].x) - (a.q + a.x * a.x)) / (2.0 * (s[i].x - a.x));
            if (cut > z[k]) break;  // z[0] = -inf ends the scan
            --k;
        }
        ++k;
        v[k] = i;
        z[k] = cut;
        z[k + 1] = inf;
    }
    for (std::size_t j = 0; j <= k; ++j) {
        const double b = std::max(z[j], 0.0), e = std::min(z[j + 1], len);
        if (b < e) out.push_back({b, e, v[j]});
    }
    return out;
}

double distance2(const Site& s, double t) { return (t - s.x) * (t - s.x) + s.q; }

// Roots in (0, h) of A u² + B u + C.
int rootsInside(double A, double B, double C, double h, double (&r)[2]) {
    int n = 0;
    auto keep = [&](double u) {
        if (u > 0 && u < h) r[n++] = u;
    };
    if (std::abs(A) < 1e-300) {
        if (B != 0) keep(-C / B);
    } else {
        const double disc = B * B - 4 * A * C;
        if (disc < 0) return 0;
        const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
        if (q != 0) {
            keep(q / A);
            keep(C / q);
        } else {
            keep(0.0);
        }
    }
    if (n == 2 && r[0] > r[1]) std::swap(r[0], r[1]);
    return n;
}

struct LineOutcome {
    HandoverCounts counts;
    std::uint64_t uncertified = 0;
    bool usable = true;
};

LineOutcome runLine(const NetworkConfig& net, const TransectSpec& spec, std::uint64_t unit) {
    LineOutcome out;
    auto rng = substream(spec.seed, unit, Stream::Transect);
    const double len = spec.lineLength;
    const double w1 = spec.stripWidth / std::sqrt(net.lambda1);
    const double w2 = net.lambda2 > 0 ? spec.stripWidth / std::sqrt(net.lambda2) : 0.0;
    const auto macro = stripSites(net.lambda1, w1, -w1, len + w1, rng);
    const auto small = stripSites(net.lambda2, w2, -w2, len + w2, rng);
    const auto e1 = envelope(macro, len);
    const auto e2 = envelope(small, len);
    if (e1.empty()) {
        out.usable = false;
        return out;
    }

    auto certify = [&](const std::vector<Piece>& e, const std::vector<Site>& s, double w) {
        for (const auto& p : e) {
            const Site& o = s[p.owner];
            if (distance2(o, p.begin) > w * w || distance2(o, p.end) > w * w) ++out.uncertified;
        }
    };
    certify(e1, macro, w1);
    certify(e2, small, w2);

    // (P_k B_k)^(2/alpha): tier 1 serves where r1² / c1 <= r2² / c2
    const double alpha = net.alpha1;
    const double c1 = std::pow(net.p1, 2.0 / alpha), c2 = std::pow(net.bias * net.p2, 2.0 / alpha);

    struct State {
        ServingId serving;
        std::uint32_t anchor;
    };
    bool havePrev = false;
    State prev{};
    auto visit = [&](const State& s) {
        if (havePrev) {
            const bool servingChanged = !(prev.serving == s.serving);
            const bool anchorChanged = prev.anchor != s.anchor;
            if (servingChanged) ++out.counts.events[std::size_t(convClass(prev.serving.tier, s.serving.tier))];
            if (anchorChanged) ++out.counts.events[std::size_t(HandoverClass::InterAnchor)];
            if (servingChanged && !anchorChanged) ++out.counts.events[std::size_t(HandoverClass::IntraAnchor)];
        }
        prev = s;
        havePrev = true;
    };
    auto stateAt = [&](double t, const Piece& m, const Piece* sm) {
        State st{{1, m.owner}, m.owner};
        if (sm && distance2(macro[m.owner], t) / c1 > distance2(small[sm->owner], t) / c2) st.serving = {2, sm->owner};
        return st;
    };

    std::size_t i = 0, j = 0;
    double t = 0;
    while (t < len) {
        while (e1[i].end <= t) ++i;
        while (j < e2.size() && e2[j].end <= t) ++j;
        const Piece& m = e1[i];
        const Piece* sm = j < e2.size() ? &e2[j] : nullptr;
        const double b = std::min(m.end, sm ? sm->end : len);
        const double h = b - t;
        double cuts[2];
        int n = 0;
        if (sm) {
            const Site& a = macro[m.owner];
            const Site& s = small[sm->owner];
            const double A = 1.0 / c1 - 1.0 / c2;
            const double B = 2.0 * (t - a.x) / c1 - 2.0 * (t - s.x) / c2;
            const double C = distance2(a, t) / c1 - distance2(s, t) / c2;
            n = rootsInside(A, B, C, h, cuts);
        }
        double from = 0;
        for (int r = 0; r <= n; ++r) {
            const double to = r < n ? cuts[r] : h;
            visit(stateAt(t + 0.5 * (from + to), m, sm));
            from = to;
        }
        t = b;
    }
    out.counts.length = len;
    return out;
}

}  // namespace

TransectResult transectHandovers(const NetworkConfig& net, const TransectSpec& spec) {
    NetworkConfig probe = net;
    if (probe.lambda2 == 0.0) probe.lambda2 = 1.0;
    requireValid(probe);
    if (net.alpha1 != net.alpha2) throw ModelError("transect counting needs a common path-loss exponent (alpha1 = alpha2)");
    if (!(spec.lineLength > 0) || !(spec.maxLength > 0) || spec.batchLines < 1 || !(spec.stripWidth > 0) ||
        spec.threads < 0)
        throw ModelError("invalid transect specification");

    TransectResult res;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nThreads = spec.threads > 0 ? unsigned(spec.threads) : hw;
    std::uint64_t unit = 0;
    auto enough = [&] {
        if (double(unit) * spec.lineLength >= spec.maxLength) return true;
        if (res.counts[HandoverClass::Conv11] < spec.minEventsPerClass) return false;
        if (net.lambda2 == 0.0) return true;
        for (auto c : {HandoverClass::Conv12, HandoverClass::Conv21, HandoverClass::Conv22})
            if (res.counts[c] < spec.minEventsPerClass) return false;
        return true;
    };
    while (!enough()) {
        std::vector<LineOutcome> batch(std::size_t(spec.batchLines));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < batch.size();) batch[k] = runLine(net, spec, unit + k);
        };
        if (nThreads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < std::min<std::size_t>(nThreads, batch.size()); ++w) pool.emplace_back(worker);
        }
        for (const auto& b : batch) {
            res.uncertified += b.uncertified;
            if (!b.usable) continue;
            res.counts += b.counts;
            ++res.lines;
        }
        unit += batch.size();
    }
    return res;
}

}  // namespace hetnet
