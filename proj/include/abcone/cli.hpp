#ifndef ABCONE_CLI_HPP
#define ABCONE_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "abcone/channel.hpp"

namespace abcone::cli {

struct SweepSpec {
    std::string var;  // k, theta, r0, mass, omega, phi, alpha
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log = false;
};

struct RunConfig {
    enum class Command { Channels, Bound, Scatter, Amplitude, Ho, Verify };
    enum class Output { Json, Csv };
    enum class LambdaMode { Physical, Manual, Dirichlet, Infinite };

    Command command = Command::Channels;
    ChannelParams params;
    double mass = 1.0;
    double r0 = 1.0;
    double omega = 1.0;
    double k = 1.0;
    double theta = 1.0;
    int levels = 4;
    int m_max = 2000;
    double smoothing = 1.0 - 1e-4;
    double kappa_max = 1e6;
    std::optional<SweepSpec> sweep;
    Output output = Output::Json;
    std::string out_path;  // empty writes to stdout
    LambdaMode lambda_mode = LambdaMode::Physical;
    double lambda_manual = 0.0;
};

// Raised on flag-level problems. exit_code 2 = malformed flags,
// 3 = physically invalid values, 0 = help requested.
struct UsageError {
    int exit_code;
    std::string message;
};

RunConfig parse_args(const std::vector<std::string>& args);

// Executes the configured command; emits records on `out`, diagnostics on
// `err`. Returns the process exit code (0 ok, 1 computation error).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace abcone::cli

#endif
