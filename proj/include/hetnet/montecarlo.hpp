#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/config.hpp"
#include "hetnet/coverage.hpp"
#include "hetnet/spatial_grid.hpp"

namespace hetnet {

// Thrown when an empirical CCDF is requested from too few samples.
class InsufficientSamples : public ModelError {
public:
    using ModelError::ModelError;
};

std::vector<double> defaultThresholdGridDb();  // -10, -9, ..., 20 dB

struct SimulationSpec {
    double windowSide = 90.0 * units::kKm;
    int segments = 5;
    int pointsPerSegment = 100;
    int realizations = 1000;
    std::uint64_t seed = 1;
    // Rayleigh scale of the segment lengths (m); 0 selects 1/sqrt(2 pi lambda1).
    double segmentScale = 0;
    // Replaces the random segment length when set (degenerate and test walks).
    std::optional<double> fixedSegmentLength;
    // Interference from each tier is summed BS by BS inside the disc holding
    // this many BSs on average; the mean of the remainder is added.
    double interferers = 200;
    std::vector<double> thresholdsDb = defaultThresholdGridDb();
    std::size_t minSamples = 1000;  // per link, below which a CCDF is refused
    int threads = 0;                // 0: hardware concurrency
};

// Everything a walk needs to stay clear of the window edge.
struct SimulationGeometry {
    double segmentScale = 0;  // m
    double guard = 0;         // 5 / sqrt(lambda1)
    double radius1 = 0;       // interference disc radius, macro tier
    double radius2 = 0;       // small tier (0 when the tier is empty)
    double innerHalf = 0;     // walks must stay inside [-innerHalf, innerHalf]²
    double plausibleExtent = 0;
};

SimulationGeometry simulationGeometry(const NetworkConfig& net, const SimulationSpec& spec);
ValidationResult validate(const SimulationSpec& spec, const NetworkConfig& net);
void requireValid(const SimulationSpec& spec, const NetworkConfig& net);

struct Network {
    double halfSide = 0;
    std::vector<Point> macro;
    std::vector<Point> small;
};

// Two independent PPPs on [-side/2, side/2]². `unit` selects the substream, so
// each realization of a run is reproducible on its own.
Network realizeNetwork(const NetworkConfig& net, const SimulationSpec& spec, std::uint64_t seed, std::uint64_t unit = 0);

class IndexedNetwork {
public:
    explicit IndexedNetwork(const Network& n, const NetworkConfig& net);

    double halfSide() const { return half_; }
    const SpatialGrid& macro() const { return macro_; }
    const SpatialGrid& small() const { return small_; }

private:
    double half_;
    SpatialGrid macro_;
    SpatialGrid small_;
};

enum class HandoverClass { Conv11, Conv12, Conv21, Conv22, InterAnchor, IntraAnchor };
inline constexpr std::size_t kHandoverClassCount = 6;
inline constexpr std::array<HandoverClass, kHandoverClassCount> kAllHandoverClasses = {
    HandoverClass::Conv11, HandoverClass::Conv12,      HandoverClass::Conv21,
    HandoverClass::Conv22, HandoverClass::InterAnchor, HandoverClass::IntraAnchor};

std::string_view handoverClassName(HandoverClass c);
inline HandoverClass convClass(int fromTier, int toTier) {
    return static_cast<HandoverClass>(2 * (fromTier - 1) + (toTier - 1));
}

struct HandoverCounts {
    std::array<std::uint64_t, kHandoverClassCount> events{};
    double length = 0;  // m travelled

    std::uint64_t operator[](HandoverClass c) const { return events[std::size_t(c)]; }
    double ratePerMetre(HandoverClass c) const { return length > 0 ? double((*this)[c]) / length : 0.0; }
    HandoverCounts& operator+=(const HandoverCounts& o);
};

// Conventional serving BS: tier 1 or 2 and its index in that tier.
struct ServingId {
    int tier = 0;
    std::uint32_t index = 0;
    bool operator==(const ServingId&) const = default;
};

struct TracePoint {
    Point position;
    UserSet tag = UserSet::Set1;
    std::uint32_t anchor = 0;  // nearest macro BS
    ServingId serving;
    std::array<double, kLinkCount> sinr{};  // linear; meaningful where applicable
    std::uint8_t linkMask = 0;

    bool applies(LinkType l) const { return (linkMask >> linkIndex(l)) & 1u; }
};

struct HandoverEvent {
    std::size_t index = 0;  // point at which the change is first seen
    HandoverClass kind = HandoverClass::Conv11;
};

enum class TraceStatus { Ok, Escaped, NoMacroBs };

struct TrajectoryTrace {
    TraceStatus status = TraceStatus::Ok;
    std::vector<TracePoint> points;
    std::vector<HandoverEvent> events;
    double length = 0;  // m

    HandoverCounts counts() const;
};

// Link types sampled for a user of the given set.
std::uint8_t linkMaskFor(UserSet s);

// Random walk from the window centre with per-point Rayleigh fading. A walk
// leaving the guarded inner square is returned with status Escaped and no
// points.
TrajectoryTrace walkTrajectory(const IndexedNetwork& network, const NetworkConfig& net, const SimulationSpec& spec,
                               std::uint64_t seed, std::uint64_t unit = 0);

struct EmpiricalCcdf {
    std::vector<double> thresholdsDb;
    std::vector<double> fractions;  // samples strictly above the threshold
    std::uint64_t sampleCount = 0;
};

// Counts of samples above each threshold; merging is a plain sum.
class CcdfAccumulator {
public:
    CcdfAccumulator() = default;
    explicit CcdfAccumulator(std::span<const double> thresholdsDb);

    void add(double sinrLinear);
    void merge(const CcdfAccumulator& o);
    std::uint64_t samples() const { return n_; }
    const std::vector<std::uint64_t>& above() const { return above_; }
    // Throws InsufficientSamples below minSamples.
    EmpiricalCcdf result(std::size_t minSamples) const;

private:
    std::vector<double> db_;
    std::vector<double> linear_;
    std::vector<std::uint64_t> above_;
    std::uint64_t n_ = 0;
};

EmpiricalCcdf empiricalCoverage(std::span<const TrajectoryTrace> traces, LinkType link,
                                std::span<const double> thresholdsDb, std::size_t minSamples = 1000);

struct SimulationResult {
    SimulationSpec spec;
    int completed = 0;
    int discardedEscaped = 0;
    int discardedEmpty = 0;
    std::array<CcdfAccumulator, kLinkCount> coverage;
    std::array<std::uint64_t, 3> setPoints{};
    HandoverCounts handovers;

    std::uint64_t samples(LinkType l) const { return coverage[linkIndex(l)].samples(); }
    EmpiricalCcdf ccdf(LinkType l) const { return coverage[linkIndex(l)].result(spec.minSamples); }
    // Fraction of trajectory points in Set1, Set2, SetB.
    std::array<double, 3> associationFractions() const;
    // Fewer than 100 kept realizations or any link below minSamples.
    bool lowConfidence() const;
};

// Realizations run in parallel; each uses only its own substreams and results
// are merged in realization order, so the output does not depend on threads.
SimulationResult runSimulation(const NetworkConfig& net, const SimulationSpec& spec);

// One row per point: x, y, set, anchor, serving, SINR (dB) per link, events.
void writeTraceCsv(std::ostream& os, const TrajectoryTrace& trace);
// theta_db, fraction, n
void writeCcdfCsv(std::ostream& os, const EmpiricalCcdf& ccdf);

}  // namespace hetnet
