#pragma once

/** The subcommands behind the `toricspec` executable. Each writes its CSV and a
    manifest.ini (the resolved configuration) into the output directory and returns
    the process exit code. */

#include "toricspec/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace toricspec {

enum ExitCode : int { exit_pass = 0, exit_tolerance = 1, exit_invalid = 2 };

struct CommandOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;   ///< overrides tolerances.roundtrip
    double scale_fu = 1.0;       ///< roundtrip: multiply the generated f_u (corruption test)
    std::string input;           ///< reconstruct: f_u CSV as written by `fu`
    bool compare = false;        ///< reconstruct: measure errors against the config profile
};

int cmd_forward(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_fu(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_reconstruct(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_roundtrip(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);

struct SuiteResult {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;  ///< the bound `observed` must not exceed
    bool pass = false;
    std::string detail;
};

/// The cross-oracle suites run by `verify`.
std::vector<SuiteResult> run_verification(const RunConfig& cfg);

/// One suite by name: raw_vs_reduced, fu_forward_vs_direct, jacobian_fd, cov_integral,
/// abel_normalization. Throws std::invalid_argument for other names.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

/// Apply flag overrides, validate, dispatch, and map exceptions to exit codes
/// (ConfigError, std::invalid_argument, std::domain_error -> 2; other failures -> 1).
int run_command(const std::string& name, RunConfig cfg, const CommandOptions& opt,
                std::ostream& out, std::ostream& err);

}  // namespace toricspec
