#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/config_io.hpp"

namespace hetnet::cli {

inline constexpr const char* kToolName = "hetnet";
const char* toolVersion();

enum ExitCode { kOk = 0, kUsage = 1, kModelFailure = 2, kValidationFailure = 3 };

// Malformed command-line values (grids, output lists, parameter names).
class UsageError : public ModelError {
public:
    using ModelError::ModelError;
};

// "a:step:b" (inclusive), "a,b,c" or a single value. Must be strictly
// increasing and finite. Throws UsageError.
std::vector<double> parseGrid(std::string_view spec);

enum class Output { Coverage, Se, Throughput, Handover, Feasibility };
std::string_view outputName(Output o);
std::vector<Output> parseOutputs(std::string_view commaList);

enum class SweepParameter { Lambda2, Velocity, ProbX2, Gamma, Bias, W1 };
std::string_view sweepParameterName(SweepParameter p);
SweepParameter parseSweepParameter(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Lambda2;
    std::vector<double> grid;  // external units
    std::vector<Output> outputs{Output::Throughput};
};

// Sets the swept quantity; probX2 sets both X2 probabilities.
void applySweepValue(ModelConfig& cfg, SweepParameter p, double external, UnitSystem u);

// CSV table with a leading block of "# " metadata comments.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const;
};

struct AnalyzeOptions {
    std::vector<double> thresholdsDb;  // coverage output
    std::vector<double> lambda2Grid;   // handover output, external units
    std::vector<double> gammaGrid;     // feasibility output
    double lower = 0;                  // breaking-density bracket, SI
    double upper = 0;
    int turningPoints = 0;
    double sweepThetaDb = 0;           // coverage columns of a sweep
    int threads = 0;
};

AnalyzeOptions defaultAnalyzeOptions(const ModelConfig& cfg, UnitSystem u);

Table analyzeTable(Output o, const ModelConfig& cfg, const AnalyzeOptions& opt, UnitSystem u);
Table feasibilityTable(const ModelConfig& cfg, const AnalyzeOptions& opt, UnitSystem u);
// Rows follow the grid order; sign changes of AT(split) - AT(conv) are
// marked when throughput is requested.
Table sweepTable(const ModelConfig& cfg, const SweepSpec& spec, const AnalyzeOptions& opt, UnitSystem u);

// Full command line entry point. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet::cli
