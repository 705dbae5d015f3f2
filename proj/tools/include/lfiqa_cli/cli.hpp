#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lfiqa/crossval.hpp"
#include "lfiqa/pooling.hpp"

namespace lfiqa::cli {

enum ExitCode : int { kOk = 0, kPartialFailure = 1, kUsageError = 2 };

/// Bad flags or missing inputs, detected before any work starts.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::filesystem::path manifest;
    std::filesystem::path input;  // feature CSV for train / predict / eval / report
    std::filesystem::path model;
    std::filesystem::path lightfield;
    std::filesystem::path out;

    std::array<double, 4> weights = kDefaultWeights;
    bool weights_given = false;  // pooled columns are recomputed from the orientation table
    int min_stack_len = 3;
    int iterations = 1000;
    SplitMode split = SplitMode::by_scene;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    std::set<std::string> channels{"L", "a", "b"};
    std::set<std::string> groups{"pcsc", "tavi"};

    // synth
    int scenes = 12;
    int angular = 9;
    int spatial = 64;
    double disparity = 0.3;
    std::vector<std::string> kinds{"blur", "quantize", "nn_view", "linear_view", "chroma_shift"};
    std::vector<int> severities{1, 2, 3, 4, 5};
    bool pristine = false;

    // predict / report
    bool mapped = false;  // apply the model's logistic mapping when it has one
    std::string report = "scatter";  // scatter | energies | sscurve
};

[[nodiscard]] std::array<double, 4> parse_weights(std::string_view text);

int cmd_synth(const RunConfig& cfg);
int cmd_extract(const RunConfig& cfg);
int cmd_train(const RunConfig& cfg);
int cmd_predict(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

/// Parses the command line, runs one subcommand and maps errors to exit codes.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Log level from LFIQA_LOG (trace, debug, info, warn, error, off); info by default.
void configure_logging();

}  // namespace lfiqa::cli
