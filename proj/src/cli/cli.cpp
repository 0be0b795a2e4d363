#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hetnet/cli.hpp"
#include "hetnet/validation.hpp"

namespace hetnet::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
    std::string config;
    std::string out = ".";
    std::string units = "paper";
    int threads = 0;

    void attach(CLI::App* c) {
        c->add_option("--config", config, "INI configuration file (defaults when omitted)");
        c->add_option("--out", out, "output directory")->capture_default_str();
        c->add_option("--units", units, "unit system of the config file, grids and tables")
            ->check(CLI::IsMember({"si", "paper"}))
            ->capture_default_str();
        c->add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    }

    UnitSystem unitSystem() const { return parseUnitSystem(units); }
    ModelConfig load() const { return config.empty() ? ModelConfig{} : loadConfigFile(config, unitSystem()); }
};

void writeFile(const fs::path& dir, const std::string& name, const std::string& content, std::ostream& out) {
    fs::create_directories(dir);
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ModelError(fmt::format("cannot write {}", path.string()));
    f << content;
    if (!f) throw ModelError(fmt::format("failed writing {}", path.string()));
    out << "wrote " << path.string() << "\n";
}

struct BracketOptions {
    std::string gammaGrid;
    std::optional<double> lower;
    std::optional<double> upper;
    int turningPoints = 81;

    void attach(CLI::App* c) {
        c->add_option("--gamma-grid", gammaGrid, "gamma values for breaking-density searches (default: config gamma)");
        c->add_option("--lower", lower, "lower end of the lambda2 bracket (default 0.01 /km^2)");
        c->add_option("--upper", upper, "upper end of the lambda2 bracket (default 1000 /km^2)");
        c->add_option("--turning-points", turningPoints, "log-spaced densities scanned for the macro-user maximum")
            ->check(CLI::Range(3, 100000))
            ->capture_default_str();
    }

    void apply(AnalyzeOptions& o, UnitSystem u) const {
        if (!gammaGrid.empty()) o.gammaGrid = parseGrid(gammaGrid);
        const auto& p = findParameter("lambda2");
        if (lower) o.lower = toSI(p, *lower, u);
        if (upper) o.upper = toSI(p, *upper, u);
        o.turningPoints = turningPoints;
    }
};

std::string validationCsvName(LinkType l) { return fmt::format("ccdf_{}.csv", linkName(l)); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-tier cellular network analysis: coverage, throughput, handover cost and Monte Carlo validation",
                 kToolName};
    app.set_version_flag("--version", std::string(toolVersion()));
    app.require_subcommand(1);

    // analyze
    Common aCommon;
    std::string aOutputs = "coverage,se,throughput,handover,feasibility";
    std::string aGrid, aLambda2Grid;
    BracketOptions aBracket;
    auto* analyze = app.add_subcommand("analyze", "evaluate the analytic model for one configuration");
    aCommon.attach(analyze);
    analyze->add_option("--outputs", aOutputs, "comma list of coverage, se, throughput, handover, feasibility")
        ->capture_default_str();
    analyze->add_option("--grid", aGrid, "SINR threshold grid in dB for coverage (default -10:1:20)");
    analyze->add_option("--lambda2-grid", aLambda2Grid, "small-cell densities for the handover table (default 0:10:200 /km^2)");
    aBracket.attach(analyze);

    // validate
    Common vCommon;
    SimulationSpec sim;
    TransectSpec transect;
    ValidationTolerances tol;
    std::string vGrid;
    auto* validateCmd = app.add_subcommand("validate", "compare the analysis with Monte Carlo simulation");
    vCommon.attach(validateCmd);
    validateCmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    validateCmd->add_option("--realizations", sim.realizations, "network realizations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validateCmd->add_option("--segments", sim.segments, "straight segments per walk")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validateCmd->add_option("--points-per-segment", sim.pointsPerSegment, "samples per segment")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validateCmd->add_option("--grid", vGrid, "SINR threshold grid in dB (default -10:1:20)");
    validateCmd->add_option("--transect-events", transect.minEventsPerClass,
                            "events per conventional class for the exact transect count")
        ->capture_default_str();
    validateCmd->add_option("--coverage-tolerance", tol.coverage, "max CCDF deviation")->capture_default_str();

    // sweep
    Common sCommon;
    std::string sParam, sGrid, sOutputs = "throughput";
    double thetaDb = 0;
    auto* sweep = app.add_subcommand("sweep", "evaluate metrics over a grid of one parameter");
    sCommon.attach(sweep);
    sweep->add_option("--param", sParam, "lambda2, velocity, probX2, gamma, bias or w1")->required();
    sweep->add_option("--grid", sGrid, "grid of the parameter in the chosen units, e.g. 0:0.1:1 or 1,3,5")->required();
    sweep->add_option("--outputs", sOutputs, "comma list of coverage, se, throughput, handover, feasibility")
        ->capture_default_str();
    sweep->add_option("--theta-db", thetaDb, "threshold for coverage columns")->capture_default_str();

    // feasibility
    Common fCommon;
    BracketOptions fBracket;
    auto* feas = app.add_subcommand("feasibility", "breaking density and macro-user turning point per gamma");
    fCommon.attach(feas);
    fBracket.attach(feas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) {
            const auto u = aCommon.unitSystem();
            const auto cfg = aCommon.load();
            auto opt = defaultAnalyzeOptions(cfg, u);
            opt.threads = aCommon.threads;
            if (!aGrid.empty()) opt.thresholdsDb = parseGrid(aGrid);
            if (!aLambda2Grid.empty()) opt.lambda2Grid = parseGrid(aLambda2Grid);
            aBracket.apply(opt, u);
            for (auto o : parseOutputs(aOutputs))
                writeFile(aCommon.out, fmt::format("{}.csv", outputName(o)), analyzeTable(o, cfg, opt, u).csv(), out);
            return kOk;
        }
        if (*sweep) {
            const auto u = sCommon.unitSystem();
            const auto cfg = sCommon.load();
            auto opt = defaultAnalyzeOptions(cfg, u);
            opt.threads = sCommon.threads;
            opt.sweepThetaDb = thetaDb;
            SweepSpec spec;
            spec.parameter = parseSweepParameter(sParam);
            spec.grid = parseGrid(sGrid);
            spec.outputs = parseOutputs(sOutputs);
            const auto t = sweepTable(cfg, spec, opt, u);
            writeFile(sCommon.out, fmt::format("sweep_{}.csv", sweepParameterName(spec.parameter)), t.csv(), out);
            return kOk;
        }
        if (*feas) {
            const auto u = fCommon.unitSystem();
            const auto cfg = fCommon.load();
            auto opt = defaultAnalyzeOptions(cfg, u);
            opt.threads = fCommon.threads;
            fBracket.apply(opt, u);
            writeFile(fCommon.out, "feasibility.csv", feasibilityTable(cfg, opt, u).csv(), out);
            return kOk;
        }
        if (*validateCmd) {
            const auto cfg = vCommon.load();
            if (!vGrid.empty()) sim.thresholdsDb = parseGrid(vGrid);
            sim.threads = vCommon.threads;
            transect.seed = sim.seed;
            transect.threads = vCommon.threads;
            const auto rep = runValidation(cfg, sim, transect, tol);
            const auto text = reportText(rep);
            writeFile(vCommon.out, "validation.json", reportJson(rep), out);
            writeFile(vCommon.out, "validation.txt", text, out);
            for (std::size_t i = 0, k = 0; i < rep.links.size(); ++i) {
                if (!rep.links[i].sufficient) continue;
                std::ostringstream csv;
                csv << "# tool: " << kToolName << " " << toolVersion() << "\n# config_hash: " << rep.configHash
                    << "\n# seed: " << sim.seed << "\n";
                writeCcdfCsv(csv, rep.ccdfs[k++]);
                writeFile(vCommon.out, validationCsvName(rep.links[i].link), csv.str(), out);
            }
            out << text;
            return rep.status() == "fail" ? kValidationFailure : kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kModelFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kModelFailure;
    }
    return kUsage;
}

}  // namespace hetnet::cli
