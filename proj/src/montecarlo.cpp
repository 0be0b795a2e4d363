#include "hetnet/montecarlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "hetnet/rng.hpp"

namespace hetnet {

using std::numbers::pi;

std::vector<double> defaultThresholdGridDb() {
    std::vector<double> g;
    for (int db = -10; db <= 20; ++db) g.push_back(db);
    return g;
}

namespace {

// The simulator accepts an empty small tier (single-tier network).
ValidationResult validateNetwork(NetworkConfig net) {
    if (net.lambda2 == 0.0) net.lambda2 = 1.0;
    return validate(net);
}

double discRadius(double lambda, double count) { return lambda > 0 ? std::sqrt(count / (pi * lambda)) : 0.0; }

}  // namespace

SimulationGeometry simulationGeometry(const NetworkConfig& net, const SimulationSpec& spec) {
    SimulationGeometry g;
    g.segmentScale = spec.segmentScale > 0 ? spec.segmentScale : 1.0 / std::sqrt(2.0 * pi * net.lambda1);
    g.guard = 5.0 / std::sqrt(net.lambda1);
    g.radius1 = discRadius(net.lambda1, spec.interferers);
    g.radius2 = discRadius(net.lambda2, spec.interferers);
    g.innerHalf = 0.5 * spec.windowSide - std::max({g.guard, g.radius1, g.radius2});
    // Rayleigh quantile at 1 - 1e-6 per segment
    const double seg = spec.fixedSegmentLength ? *spec.fixedSegmentLength : g.segmentScale * std::sqrt(2.0 * std::log(1e6));
    g.plausibleExtent = std::max(spec.segments, 0) * seg;
    return g;
}

ValidationResult validate(const SimulationSpec& s, const NetworkConfig& net) {
    ValidationResult v = validateNetwork(net);
    auto check = [&](bool ok, const char* field, std::string msg) {
        if (!ok) v.violations.push_back({field, std::move(msg)});
    };
    check(s.windowSide > 0 && std::isfinite(s.windowSide), "windowSide", "window side must be positive");
    check(s.segments >= 1, "segments", "segments must be at least 1");
    check(s.pointsPerSegment >= 1, "pointsPerSegment", "pointsPerSegment must be at least 1");
    check(s.realizations >= 1, "realizations", "realizations must be at least 1");
    check(s.segmentScale >= 0 && std::isfinite(s.segmentScale), "segmentScale", "segment scale must be non-negative");
    check(!s.fixedSegmentLength || (*s.fixedSegmentLength >= 0 && std::isfinite(*s.fixedSegmentLength)),
          "fixedSegmentLength", "fixed segment length must be non-negative");
    check(s.interferers > 0 && std::isfinite(s.interferers), "interferers", "interferer count must be positive");
    check(s.minSamples >= 1, "minSamples", "minSamples must be at least 1");
    check(s.threads >= 0, "threads", "threads must be non-negative");
    bool increasing = !s.thresholdsDb.empty();
    for (std::size_t i = 0; i < s.thresholdsDb.size(); ++i) {
        if (!std::isfinite(s.thresholdsDb[i]) || (i > 0 && !(s.thresholdsDb[i] > s.thresholdsDb[i - 1])))
            increasing = false;
    }
    check(increasing, "thresholdsDb", "threshold grid must be non-empty, finite and strictly increasing");
    if (v.ok()) {
        const auto g = simulationGeometry(net, s);
        check(g.innerHalf > g.plausibleExtent, "windowSide",
              fmt::format("window side {:.6g} m leaves {:.6g} m inside the guard band, less than the walk extent {:.6g} m",
                          s.windowSide, 2 * g.innerHalf, g.plausibleExtent));
    }
    return v;
}

void requireValid(const SimulationSpec& spec, const NetworkConfig& net) {
    const auto v = validate(spec, net);
    if (!v.ok()) throw ModelError(v.summary());
}

Network realizeNetwork(const NetworkConfig& net, const SimulationSpec& spec, std::uint64_t seed, std::uint64_t unit) {
    Network n;
    n.halfSide = 0.5 * spec.windowSide;
    const double area = spec.windowSide * spec.windowSide;
    auto fill = [&](std::vector<Point>& pts, double lambda, Stream s) {
        auto rng = substream(seed, unit, s);
        if (!(lambda > 0)) return;
        const auto count = std::poisson_distribution<std::uint64_t>(lambda * area)(rng);
        std::uniform_real_distribution<double> u(-n.halfSide, n.halfSide);
        pts.resize(count);
        for (auto& p : pts) {
            p.x = u(rng);
            p.y = u(rng);
        }
    };
    fill(n.macro, net.lambda1, Stream::MacroSites);
    fill(n.small, net.lambda2, Stream::SmallSites);
    return n;
}

namespace {

SpatialGrid gridFor(const std::vector<Point>& pts, double half, double lambda) {
    if (pts.empty()) return {};
    return SpatialGrid(pts, half, 1.0 / std::sqrt(lambda));
}

}  // namespace

IndexedNetwork::IndexedNetwork(const Network& n, const NetworkConfig& net)
    : half_(n.halfSide),
      macro_(gridFor(n.macro, n.halfSide, net.lambda1)),
      small_(gridFor(n.small, n.halfSide, net.lambda2)) {}

std::string_view handoverClassName(HandoverClass c) {
    switch (c) {
        case HandoverClass::Conv11: return "conv_11";
        case HandoverClass::Conv12: return "conv_12";
        case HandoverClass::Conv21: return "conv_21";
        case HandoverClass::Conv22: return "conv_22";
        case HandoverClass::InterAnchor: return "interAnchor";
        case HandoverClass::IntraAnchor: return "intraAnchor";
    }
    return "?";
}

HandoverCounts& HandoverCounts::operator+=(const HandoverCounts& o) {
    for (std::size_t i = 0; i < events.size(); ++i) events[i] += o.events[i];
    length += o.length;
    return *this;
}

HandoverCounts TrajectoryTrace::counts() const {
    HandoverCounts c;
    for (const auto& e : events) ++c.events[std::size_t(e.kind)];
    c.length = length;
    return c;
}

std::uint8_t linkMaskFor(UserSet s) {
    auto bit = [](LinkType l) { return std::uint8_t(1u << linkIndex(l)); };
    switch (s) {
        case UserSet::Set1: return bit(LinkType::ConvMacro) | bit(LinkType::SplitMacro);
        case UserSet::Set2: return bit(LinkType::ConvSmall) | bit(LinkType::SplitData2) | bit(LinkType::SplitCtrl2);
        case UserSet::SetB: return bit(LinkType::ConvBiased) | bit(LinkType::SplitDataB) | bit(LinkType::SplitCtrlB);
    }
    return 0;
}

namespace {

struct Tier {
    const SpatialGrid* grid;
    double power;
    double alpha;
    double radius;
    double tailMean;  // mean interference from beyond `radius`

    double gain(double d2) const { return alpha == 4.0 ? 1.0 / (d2 * d2) : std::pow(d2, -0.5 * alpha); }
};

struct Received {
    double signal = 0;  // faded power from the nearest BS of the tier
    double others = 0;  // faded power from the rest of the tier
};

// Faded powers are drawn in the grid's fixed visiting order, so a point's
// samples depend only on the fading stream.
Received receive(const Tier& t, Point q, const Neighbor& nearest, std::exponential_distribution<double>& fade,
                 std::mt19937_64& rng) {
    Received r;
    bool servingSeen = false;
    t.grid->forEachWithin(q, t.radius, [&](std::uint32_t i, double d2) {
        const double p = t.power * fade(rng) * t.gain(d2);
        if (i == nearest.index) {
            r.signal = p;
            servingSeen = true;
        } else {
            r.others += p;
        }
    });
    if (!servingSeen) r.signal = t.power * fade(rng) * t.gain(nearest.distance2);
    r.others += t.tailMean;
    return r;
}

Tier makeTier(const SpatialGrid& g, double lambda, double power, double alpha, double radius) {
    const double tail = lambda > 0 ? 2.0 * pi * lambda * power * std::pow(radius, 2.0 - alpha) / (alpha - 2.0) : 0.0;
    return {&g, power, alpha, radius, tail};
}

}  // namespace

TrajectoryTrace walkTrajectory(const IndexedNetwork& network, const NetworkConfig& net, const SimulationSpec& spec,
                               std::uint64_t seed, std::uint64_t unit) {
    TrajectoryTrace trace;
    if (network.macro().empty()) {
        trace.status = TraceStatus::NoMacroBs;
        return trace;
    }
    const auto geo = simulationGeometry(net, spec);

    // Path first, so that the fading stream never influences the geometry.
    auto pathRng = substream(seed, unit, Stream::Path);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> path{{0.0, 0.0}};
    path.reserve(std::size_t(spec.segments) * spec.pointsPerSegment + 1);
    for (int s = 0; s < spec.segments; ++s) {
        double len;
        if (spec.fixedSegmentLength) {
            len = *spec.fixedSegmentLength;
        } else {
            len = geo.segmentScale * std::sqrt(-2.0 * std::log1p(-unif(pathRng)));
        }
        const double angle = 2.0 * pi * unif(pathRng);
        const Point start = path.back();
        const double dx = std::cos(angle), dy = std::sin(angle);
        for (int k = 1; k <= spec.pointsPerSegment; ++k) {
            const double f = len * k / spec.pointsPerSegment;
            path.push_back({start.x + f * dx, start.y + f * dy});
        }
        trace.length += len;
    }
    for (const auto& p : path) {
        if (std::abs(p.x) > geo.innerHalf || std::abs(p.y) > geo.innerHalf) {
            trace.status = TraceStatus::Escaped;
            trace.length = 0;
            return trace;
        }
    }

    const Tier macro = makeTier(network.macro(), net.lambda1, net.p1, net.alpha1, geo.radius1);
    const Tier small = makeTier(network.small(), net.lambda2, net.p2, net.alpha2, geo.radius2);
    auto fadeRng = substream(seed, unit, Stream::Fading);
    std::exponential_distribution<double> fade(1.0);
    const double noise = net.noise;

    trace.points.reserve(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Point q = path[i];
        const Neighbor n1 = *network.macro().nearest(q);
        const auto n2 = network.small().nearest(q);
        const double r1 = std::sqrt(n1.distance2);
        const double r2 = n2 ? std::sqrt(n2->distance2) : INFINITY;

        TracePoint tp;
        tp.position = q;
        tp.tag = classify(r1, r2, net);
        tp.anchor = n1.index;
        tp.serving = tp.tag == UserSet::Set1 ? ServingId{1, n1.index} : ServingId{2, n2->index};
        tp.linkMask = linkMaskFor(tp.tag);

        const Received m = receive(macro, q, n1, fade, fadeRng);
        const Received s = n2 ? receive(small, q, *n2, fade, fadeRng) : Received{};
        const double macroOnly = m.signal / (m.others + noise);
        auto& v = tp.sinr;
        switch (tp.tag) {
            case UserSet::Set1:
                v[linkIndex(LinkType::ConvMacro)] = m.signal / (m.others + s.signal + s.others + noise);
                v[linkIndex(LinkType::SplitMacro)] = macroOnly;
                break;
            case UserSet::Set2:
                v[linkIndex(LinkType::ConvSmall)] = s.signal / (m.signal + m.others + s.others + noise);
                v[linkIndex(LinkType::SplitData2)] = s.signal / (s.others + noise);
                v[linkIndex(LinkType::SplitCtrl2)] = macroOnly;
                break;
            case UserSet::SetB:
                // the macro tier is blanked while biased users are served
                v[linkIndex(LinkType::ConvBiased)] = s.signal / (s.others + noise);
                v[linkIndex(LinkType::SplitDataB)] = v[linkIndex(LinkType::ConvBiased)];
                v[linkIndex(LinkType::SplitCtrlB)] = macroOnly;
                break;
        }

        if (i > 0) {
            const auto& prev = trace.points.back();
            const bool servingChanged = !(prev.serving == tp.serving);
            const bool anchorChanged = prev.anchor != tp.anchor;
            if (servingChanged) trace.events.push_back({i, convClass(prev.serving.tier, tp.serving.tier)});
            if (anchorChanged) trace.events.push_back({i, HandoverClass::InterAnchor});
            if (servingChanged && !anchorChanged) trace.events.push_back({i, HandoverClass::IntraAnchor});
        }
        trace.points.push_back(tp);
    }
    return trace;
}

CcdfAccumulator::CcdfAccumulator(std::span<const double> thresholdsDb)
    : db_(thresholdsDb.begin(), thresholdsDb.end()), above_(thresholdsDb.size(), 0) {
    linear_.reserve(db_.size());
    for (double d : db_) linear_.push_back(dbToLinear(d));
}

void CcdfAccumulator::add(double sinr) {
    ++n_;
    // thresholds ascend, so the samples above form a prefix
    const auto k = std::size_t(std::lower_bound(linear_.begin(), linear_.end(), sinr) - linear_.begin());
    for (std::size_t i = 0; i < k; ++i) ++above_[i];
}

void CcdfAccumulator::merge(const CcdfAccumulator& o) {
    if (o.db_ != db_) throw ModelError("cannot merge CCDFs on different threshold grids");
    for (std::size_t i = 0; i < above_.size(); ++i) above_[i] += o.above_[i];
    n_ += o.n_;
}

EmpiricalCcdf CcdfAccumulator::result(std::size_t minSamples) const {
    if (n_ < minSamples)
        throw InsufficientSamples(fmt::format("only {} samples, at least {} required", n_, minSamples));
    EmpiricalCcdf c;
    c.thresholdsDb = db_;
    c.sampleCount = n_;
    for (auto a : above_) c.fractions.push_back(double(a) / double(n_));
    return c;
}

EmpiricalCcdf empiricalCoverage(std::span<const TrajectoryTrace> traces, LinkType link,
                                std::span<const double> thresholdsDb, std::size_t minSamples) {
    CcdfAccumulator acc(thresholdsDb);
    for (const auto& t : traces)
        for (const auto& p : t.points)
            if (p.applies(link)) acc.add(p.sinr[linkIndex(link)]);
    try {
        return acc.result(minSamples);
    } catch (const InsufficientSamples& e) {
        throw InsufficientSamples(fmt::format("{}: {}", linkName(link), e.what()));
    }
}

std::array<double, 3> SimulationResult::associationFractions() const {
    const double n = double(setPoints[0] + setPoints[1] + setPoints[2]);
    if (n == 0) return {0, 0, 0};
    return {setPoints[0] / n, setPoints[1] / n, setPoints[2] / n};
}

bool SimulationResult::lowConfidence() const {
    if (completed < 100) return true;
    for (const auto& c : coverage)
        if (c.samples() < spec.minSamples) return true;
    return false;
}

namespace {

struct RealizationSummary {
    TraceStatus status = TraceStatus::Ok;
    std::array<CcdfAccumulator, kLinkCount> coverage;
    std::array<std::uint64_t, 3> setPoints{};
    HandoverCounts handovers;
};

RealizationSummary runOne(const NetworkConfig& net, const SimulationSpec& spec, std::uint64_t unit) {
    RealizationSummary r;
    const IndexedNetwork network(realizeNetwork(net, spec, spec.seed, unit), net);
    const auto trace = walkTrajectory(network, net, spec, spec.seed, unit);
    r.status = trace.status;
    if (trace.status != TraceStatus::Ok) return r;
    for (auto l : kAllLinks) r.coverage[linkIndex(l)] = CcdfAccumulator(spec.thresholdsDb);
    for (const auto& p : trace.points) {
        ++r.setPoints[std::size_t(p.tag)];
        for (auto l : kAllLinks)
            if (p.applies(l)) r.coverage[linkIndex(l)].add(p.sinr[linkIndex(l)]);
    }
    r.handovers = trace.counts();
    return r;
}

}  // namespace

SimulationResult runSimulation(const NetworkConfig& net, const SimulationSpec& spec) {
    requireValid(spec, net);
    std::vector<RealizationSummary> parts(std::size_t(spec.realizations));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t u; (u = next.fetch_add(1)) < parts.size();) parts[u] = runOne(net, spec, u);
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nThreads = std::min<std::size_t>(spec.threads > 0 ? unsigned(spec.threads) : hw, parts.size());
    if (nThreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < nThreads; ++t) pool.emplace_back(worker);
    }

    SimulationResult res;
    res.spec = spec;
    for (auto l : kAllLinks) res.coverage[linkIndex(l)] = CcdfAccumulator(spec.thresholdsDb);
    for (const auto& p : parts) {
        switch (p.status) {
            case TraceStatus::Escaped: ++res.discardedEscaped; continue;
            case TraceStatus::NoMacroBs: ++res.discardedEmpty; continue;
            case TraceStatus::Ok: break;
        }
        ++res.completed;
        for (std::size_t i = 0; i < kLinkCount; ++i) res.coverage[i].merge(p.coverage[i]);
        for (std::size_t i = 0; i < 3; ++i) res.setPoints[i] += p.setPoints[i];
        res.handovers += p.handovers;
    }
    return res;
}

void writeTraceCsv(std::ostream& os, const TrajectoryTrace& trace) {
    os << "x_m,y_m,set,anchor,serving_tier,serving";
    for (auto l : kAllLinks) os << ",sinr_db_" << linkName(l);
    os << ",events\n";
    std::size_t e = 0;
    for (std::size_t i = 0; i < trace.points.size(); ++i) {
        const auto& p = trace.points[i];
        os << fmt::format("{:.6f},{:.6f},{},{},{},{}", p.position.x, p.position.y, userSetName(p.tag), p.anchor,
                          p.serving.tier, p.serving.index);
        for (auto l : kAllLinks) {
            os << ',';
            if (p.applies(l)) os << fmt::format("{:.6f}", linearToDb(p.sinr[linkIndex(l)]));
        }
        os << ',';
        for (bool first = true; e < trace.events.size() && trace.events[e].index == i; ++e, first = false)
            os << (first ? "" : ";") << handoverClassName(trace.events[e].kind);
        os << '\n';
    }
}

void writeCcdfCsv(std::ostream& os, const EmpiricalCcdf& c) {
    os << "theta_db,fraction,n\n";
    for (std::size_t i = 0; i < c.thresholdsDb.size(); ++i)
        os << fmt::format("{:.6g},{:.10f},{}\n", c.thresholdsDb[i], c.fractions[i], c.sampleCount);
}

}  // namespace hetnet
