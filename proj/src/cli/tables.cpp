#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "hetnet/cli.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/coverage.hpp"
#include "hetnet/mobility.hpp"
#include "hetnet/throughput.hpp"

namespace hetnet::cli {

const char* toolVersion() { return HETNET_VERSION; }

std::vector<double> parseGrid(std::string_view spec) {
    auto number = [&](std::string_view s) {
        std::string t(s);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size() || !std::isfinite(v))
            throw UsageError(fmt::format("bad number '{}' in grid '{}'", s, spec));
        return v;
    };
    std::vector<double> g;
    if (spec.find(':') != std::string_view::npos) {
        const auto a = spec.find(':'), b = spec.find(':', a + 1);
        if (b == std::string_view::npos || spec.find(':', b + 1) != std::string_view::npos)
            throw UsageError(fmt::format("range grid '{}' must look like start:step:stop", spec));
        const double lo = number(spec.substr(0, a)), step = number(spec.substr(a + 1, b - a - 1)),
                     hi = number(spec.substr(b + 1));
        if (!(step > 0) || hi < lo) throw UsageError(fmt::format("range grid '{}' needs step > 0 and stop >= start", spec));
        const auto n = std::size_t(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (n > 1000000) throw UsageError(fmt::format("range grid '{}' has too many points", spec));
        for (std::size_t i = 0; i < n; ++i) g.push_back(lo + double(i) * step);
    } else {
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            const auto c = std::min(spec.find(',', pos), spec.size());
            g.push_back(number(spec.substr(pos, c - pos)));
            pos = c + 1;
        }
    }
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw UsageError(fmt::format("grid '{}' must be strictly increasing", spec));
    return g;
}

std::string_view outputName(Output o) {
    switch (o) {
        case Output::Coverage: return "coverage";
        case Output::Se: return "se";
        case Output::Throughput: return "throughput";
        case Output::Handover: return "handover";
        case Output::Feasibility: return "feasibility";
    }
    return "?";
}

std::vector<Output> parseOutputs(std::string_view list) {
    std::vector<Output> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto c = std::min(list.find(',', pos), list.size());
        const auto item = list.substr(pos, c - pos);
        bool found = false;
        for (auto o : {Output::Coverage, Output::Se, Output::Throughput, Output::Handover, Output::Feasibility}) {
            if (outputName(o) == item) {
                if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
                found = true;
            }
        }
        if (!found)
            throw UsageError(fmt::format("unknown output '{}' (coverage, se, throughput, handover, feasibility)", item));
        pos = c + 1;
    }
    return out;
}

std::string_view sweepParameterName(SweepParameter p) {
    switch (p) {
        case SweepParameter::Lambda2: return "lambda2";
        case SweepParameter::Velocity: return "velocity";
        case SweepParameter::ProbX2: return "probX2";
        case SweepParameter::Gamma: return "gamma";
        case SweepParameter::Bias: return "bias";
        case SweepParameter::W1: return "w1";
    }
    return "?";
}

SweepParameter parseSweepParameter(std::string_view name) {
    for (auto p : {SweepParameter::Lambda2, SweepParameter::Velocity, SweepParameter::ProbX2, SweepParameter::Gamma,
                   SweepParameter::Bias, SweepParameter::W1})
        if (sweepParameterName(p) == name) return p;
    throw UsageError(fmt::format("unknown sweep parameter '{}' (lambda2, velocity, probX2, gamma, bias, w1)", name));
}

void applySweepValue(ModelConfig& cfg, SweepParameter p, double v, UnitSystem u) {
    if (p == SweepParameter::ProbX2) {
        cfg.mobility.probX2Conv = v;
        cfg.mobility.probX2Split = v;
        return;
    }
    setParameter(cfg, sweepParameterName(p), v, u);
}

std::string Table::csv() const {
    std::string s;
    for (const auto& c : comments) s += "# " + c + "\n";
    auto join = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
        s += "\n";
    };
    join(header);
    for (const auto& r : rows) join(r);
    return s;
}

namespace {

constexpr double kDefaultLower = 0.01 * units::kPerKm2;
constexpr double kDefaultUpper = 1000.0 * units::kPerKm2;

std::string num(double v) {
    if (!std::isfinite(v)) throw ModelError("internal error: non-finite value reached the output");
    return fmt::format("{:.10g}", v);
}

std::string flag(bool b) { return b ? "true" : "false"; }

// Column suffix for a quantity in the active unit system.
std::string suffix(std::string_view unit) {
    if (unit == "1/m^2") return "_per_m2";
    if (unit == "1/km^2") return "_per_km2";
    if (unit == "m/s") return "_m_per_s";
    if (unit == "km/h") return "_km_per_h";
    if (unit == "Hz") return "_hz";
    if (unit == "MHz") return "_mhz";
    return "";
}

std::string paramColumn(std::string_view name, UnitSystem u) {
    const auto& p = findParameter(name);
    return std::string(name) + suffix(u == UnitSystem::Paper ? p.paperUnit : p.siUnit);
}

double external(std::string_view name, double si, UnitSystem u) { return fromSI(findParameter(name), si, u); }

// handovers per metre -> per km in paper units
double rateOut(double perMetre, UnitSystem u) { return u == UnitSystem::Paper ? perMetre * 1e3 : perMetre; }
std::string rateSuffix(UnitSystem u) { return u == UnitSystem::Paper ? "_per_km" : "_per_m"; }

std::vector<std::string> metadata(const ModelConfig& cfg, UnitSystem u, const std::string& what) {
    const char* detail = u == UnitSystem::Paper
                             ? "density 1/km^2, velocity km/h, bandwidth MHz, handover rate 1/km, throughput nats/s"
                             : "density 1/m^2, velocity m/s, bandwidth Hz, handover rate 1/m, throughput nats/s";
    return {fmt::format("tool: {} {}", kToolName, toolVersion()), fmt::format("table: {}", what),
            fmt::format("config_hash: {}", configHashHex(cfg)), fmt::format("units: {} ({})", unitSystemName(u), detail)};
}

// Columns shared by the single-configuration and sweep tables.
struct Cells {
    std::vector<std::string> header;
    std::vector<std::string> values;

    void add(std::string h, std::string v) {
        header.push_back(std::move(h));
        values.push_back(std::move(v));
    }
};

struct ThroughputNumbers {
    double atConv = 0;
    double atSplit = 0;
    double macroUser = 0;
};

ThroughputNumbers throughputCells(const ModelConfig& cfg, Cells& c) {
    const ThroughputModel m(cfg);
    const auto uc = m.userThroughput(Architecture::Conventional);
    const auto us = m.userThroughput(Architecture::Split);
    const auto tc = m.conventional();
    const auto ts = m.split();
    const auto& a = m.association();
    const auto& n = m.loads();
    const double macroUser = m.macroUserThroughput();
    c.add("at_conv_nats_per_s", uc.saturated ? "saturated" : num(uc.value));
    c.add("at_split_nats_per_s", us.saturated ? "saturated" : num(us.value));
    c.add("at_split_minus_conv_nats_per_s", num(us.value - uc.value));
    c.add("cost_conv", num(uc.handoverCost));
    c.add("cost_split", num(us.handoverCost));
    c.add("stationary_conv_nats_per_s", num(uc.stationary));
    c.add("stationary_split_nats_per_s", num(us.stationary));
    c.add("t1_conv_nats_per_s", num(tc.t1));
    c.add("t2_conv_nats_per_s", num(tc.t2));
    c.add("tB_conv_nats_per_s", num(tc.tB));
    c.add("t1_split_nats_per_s", ts.macroClamped ? "infeasible" : num(ts.t1));
    c.add("t2_split_nats_per_s", num(ts.t2));
    c.add("tB_split_nats_per_s", num(ts.tB));
    c.add("macro_user_split_nats_per_s", ts.macroClamped ? "infeasible" : num(macroUser));
    c.add("n1", num(n.n1));
    c.add("n2", num(n.n2));
    c.add("nB", num(n.nB));
    c.add("a1", num(a.a1));
    c.add("a2", num(a.a2));
    c.add("aB", num(a.aB));
    c.add("feasible", flag(m.feasibility().feasible));
    return {uc.value, us.value, macroUser};
}

void handoverCells(const NetworkConfig& net, UnitSystem u, Cells& c) {
    const auto h = handoverRates(net);
    const auto s = rateSuffix(u);
    c.add("ho11" + s, num(rateOut(h.conv[0][0], u)));
    c.add("ho12" + s, num(rateOut(h.conv[0][1], u)));
    c.add("ho21" + s, num(rateOut(h.conv[1][0], u)));
    c.add("ho22" + s, num(rateOut(h.conv[1][1], u)));
    c.add("mho" + s, num(rateOut(h.interAnchor, u)));
    c.add("vho" + s, num(rateOut(h.intraAnchor, u)));
    c.add("total" + s, num(rateOut(h.total(), u)));
    c.add("vho_clamped", flag(h.intraClamped));
}

void marginCells(const ModelConfig& cfg, Cells& c) {
    const auto f = feasibility(cfg);
    c.add("control_demand", num(f.lhs));
    c.add("control_capacity", std::isinf(f.rhs) ? "unbounded" : num(f.rhs));
    c.add("margin", std::isinf(f.margin) ? "unbounded" : num(f.margin));
    c.add("feasible", flag(f.feasible));
}

void seCells(const NetworkConfig& net, Cells& c) {
    const auto se = spectralEfficiencies(net);
    for (auto l : kAllLinks) c.add(fmt::format("se_{}", linkName(l)), num(se[l]));
}

void coverageCells(const NetworkConfig& net, double thetaDb, Cells& c) {
    const CoverageModel m(net);
    for (auto l : kAllLinks) c.add(fmt::format("coverage_{}_at_{:g}db", linkName(l), thetaDb), num(m.coverage(l, dbToLinear(thetaDb))));
}

template <class F>
void parallelFor(std::size_t n, int threads, F&& f) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto k = std::min<std::size_t>(threads > 0 ? unsigned(threads) : hw, n);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (k <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < k; ++t) pool.emplace_back(worker);
    }
    // report the first failure in grid order
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

AnalyzeOptions defaultAnalyzeOptions(const ModelConfig& cfg, UnitSystem u) {
    AnalyzeOptions o;
    o.thresholdsDb = defaultThresholdGridDb();
    for (int i = 0; i <= 20; ++i) o.lambda2Grid.push_back(external("lambda2", i * 10.0 * units::kPerKm2, u));
    o.gammaGrid = {cfg.split.gamma};
    o.lower = kDefaultLower;
    o.upper = kDefaultUpper;
    o.turningPoints = 81;
    return o;
}

Table feasibilityTable(const ModelConfig& cfg, const AnalyzeOptions& opt, UnitSystem u) {
    Table t;
    t.comments = metadata(cfg, u, "feasibility");
    t.comments.push_back(fmt::format("bracket: [{}, {}] {}", num(external("lambda2", opt.lower, u)),
                                     num(external("lambda2", opt.upper, u)), paramColumn("lambda2", u)));
    t.comments.push_back("breaking density: geometric bisection to 1% relative, at most 60 iterations");
    t.comments.push_back(fmt::format("turning point: maximum over {} log-spaced densities in the bracket", opt.turningPoints));
    std::vector<Cells> rows(opt.gammaGrid.size());
    parallelFor(rows.size(), opt.threads, [&](std::size_t i) {
        ModelConfig c = cfg;
        c.split.gamma = opt.gammaGrid[i];
        Cells& r = rows[i];
        r.add("gamma", num(c.split.gamma));
        marginCells(c, r);
        const auto b = breakingDensity(c, opt.lower, opt.upper);
        std::string status = "found";
        if (!b.found) status = feasibility([&] { auto x = c; x.network.lambda2 = opt.lower; return x; }()).feasible
                                   ? "feasible_throughout"
                                   : "infeasible_throughout";
        r.add("breaking_status", status);
        r.add("lambda2_star" + suffix(u == UnitSystem::Paper ? "1/km^2" : "1/m^2"),
              b.found ? num(external("lambda2", b.lambda2, u)) : status == "infeasible_throughout" ? "infeasible" : "none");
        r.add("bisection_iterations", std::to_string(b.iterations));
        const auto tp = macroTurningPoint(c, opt.lower, opt.upper, opt.turningPoints);
        r.add("turning_lambda2" + suffix(u == UnitSystem::Paper ? "1/km^2" : "1/m^2"), num(external("lambda2", tp.lambda2, u)));
        r.add("turning_macro_user_nats_per_s", num(tp.value));
        r.add("turning_interior", flag(tp.interior));
    });
    if (!rows.empty()) t.header = rows.front().header;
    for (auto& r : rows) t.rows.push_back(std::move(r.values));
    return t;
}

Table analyzeTable(Output o, const ModelConfig& cfg, const AnalyzeOptions& opt, UnitSystem u) {
    requireValid(cfg);
    Table t;
    switch (o) {
        case Output::Coverage: {
            t.comments = metadata(cfg, u, "coverage");
            t.header.push_back("theta_db");
            for (auto l : kAllLinks) t.header.emplace_back(linkName(l));
            const CoverageModel m(cfg.network);
            for (double db : opt.thresholdsDb) {
                std::vector<std::string> row{num(db)};
                for (auto l : kAllLinks) row.push_back(num(m.coverage(l, dbToLinear(db))));
                t.rows.push_back(std::move(row));
            }
            return t;
        }
        case Output::Se: {
            t.comments = metadata(cfg, u, "spectral efficiency");
            t.header = {"link", "se_nats_per_s_per_hz"};
            const auto se = spectralEfficiencies(cfg.network);
            for (auto l : kAllLinks) t.rows.push_back({std::string(linkName(l)), num(se[l])});
            return t;
        }
        case Output::Throughput: {
            t.comments = metadata(cfg, u, "throughput");
            Cells c;
            throughputCells(cfg, c);
            t.header = c.header;
            t.rows.push_back(c.values);
            return t;
        }
        case Output::Handover: {
            t.comments = metadata(cfg, u, "handover");
            std::vector<Cells> rows(opt.lambda2Grid.size());
            parallelFor(rows.size(), opt.threads, [&](std::size_t i) {
                NetworkConfig n = cfg.network;
                n.lambda2 = toSI(findParameter("lambda2"), opt.lambda2Grid[i], u);
                rows[i].add(paramColumn("lambda2", u), num(opt.lambda2Grid[i]));
                handoverCells(n, u, rows[i]);
            });
            if (!rows.empty()) t.header = rows.front().header;
            for (auto& r : rows) t.rows.push_back(std::move(r.values));
            return t;
        }
        case Output::Feasibility: return feasibilityTable(cfg, opt, u);
    }
    throw ModelError("unhandled output");
}

Table sweepTable(const ModelConfig& cfg, const SweepSpec& spec, const AnalyzeOptions& opt, UnitSystem u) {
    if (spec.grid.empty()) throw UsageError("sweep grid is empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1])) throw UsageError("sweep grid must be strictly increasing");
    if (spec.outputs.empty()) throw UsageError("sweep needs at least one output");

    const auto name = sweepParameterName(spec.parameter);
    const std::string column = spec.parameter == SweepParameter::ProbX2 ? "probX2" : paramColumn(name, u);
    const bool withThroughput =
        std::find(spec.outputs.begin(), spec.outputs.end(), Output::Throughput) != spec.outputs.end();

    std::vector<Cells> rows(spec.grid.size());
    std::vector<ThroughputNumbers> numbers(spec.grid.size());
    parallelFor(rows.size(), opt.threads, [&](std::size_t i) {
        ModelConfig c = cfg;
        applySweepValue(c, spec.parameter, spec.grid[i], u);
        requireValid(c);
        Cells& r = rows[i];
        r.add(column, num(spec.grid[i]));
        for (auto o : spec.outputs) {
            switch (o) {
                case Output::Throughput: numbers[i] = throughputCells(c, r); break;
                case Output::Handover: handoverCells(c.network, u, r); break;
                case Output::Feasibility: marginCells(c, r); break;
                case Output::Se: seCells(c.network, r); break;
                case Output::Coverage: coverageCells(c.network, opt.sweepThetaDb, r); break;
            }
        }
    });

    Table t;
    std::string outs;
    for (auto o : spec.outputs) outs += (outs.empty() ? "" : ",") + std::string(outputName(o));
    t.comments = metadata(cfg, u, fmt::format("sweep of {} ({})", name, outs));
    t.header = rows.front().header;
    for (auto& r : rows) t.rows.push_back(std::move(r.values));

    if (withThroughput) {
        // sign changes of AT(split) - AT(conv), ignoring exact ties
        t.header.push_back("crossover");
        int lastSign = 0;
        std::size_t lastIndex = 0;
        for (std::size_t i = 0; i < numbers.size(); ++i) {
            const double d = numbers[i].atSplit - numbers[i].atConv;
            const int s = (d > 0) - (d < 0);
            bool change = false;
            if (s != 0) {
                if (lastSign != 0 && s != lastSign) {
                    change = true;
                    const double d0 = numbers[lastIndex].atSplit - numbers[lastIndex].atConv;
                    const double x0 = spec.grid[lastIndex], x1 = spec.grid[i];
                    const double at = x0 + (x1 - x0) * d0 / (d0 - d);
                    t.comments.push_back(fmt::format("crossover: {} between {} and {}, interpolated {} ({} ahead after)",
                                                     column, num(x0), num(x1), num(at), s > 0 ? "split" : "conventional"));
                }
                lastSign = s;
                lastIndex = i;
            }
            t.rows[i].push_back(change ? "yes" : "no");
        }
        if (numbers.size() >= 3) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < numbers.size(); ++i)
                if (numbers[i].macroUser > numbers[best].macroUser) best = i;
            const bool interior = best > 0 && best + 1 < numbers.size();
            t.comments.push_back(fmt::format("macro_user_split maximum: {} = {} ({})", column, num(spec.grid[best]),
                                             interior ? "interior" : "grid boundary"));
        }
    }
    return t;
}

}  // namespace hetnet::cli
