#pragma once

#include "invar/cli/run_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace invar::cli {

/// Exit-code contract, stable for scripting:
/// 0 success/certified, 1 validation failure, 3 falsified, 2 usage/IO error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFalsified = 3;

struct Options {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;  // overrides every configured seed
    int threads = 0;                    // 0: hardware default
    std::optional<int> stride;
    bool allow_warn = false;
};

int cmd_validate(const RunConfig& config, const Options& opts, std::ostream& log);
int cmd_solve(const RunConfig& config, const Options& opts, std::ostream& log);
int cmd_certify(const RunConfig& config, const Options& opts, std::ostream& log);
int cmd_simulate(const RunConfig& config, const Options& opts, std::ostream& log);
int cmd_report(const RunConfig& config, const Options& opts, std::ostream& log);

/// Full argv-style driver behind the binary: `invar <subcommand> --config
/// <file> [--out DIR] [--seed N] [--threads K] [--stride K] [--allow-warn]`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invar::cli
