#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "royalgamma/serialize.hpp"

namespace royal::cli {

enum class Command { Solve, Verify, Sweep, Blaschke, Roundtrip };

enum ExitCode : int { kSuccess = 0, kInputError = 1, kUnsolvable = 2, kVerificationFailed = 3 };

inline constexpr int kMinOmegaGrid = 8;
inline constexpr int kMaxOmegaGrid = 65536;

struct JobConfig {
    Command command = Command::Solve;
    std::string input;   // empty: read nothing (roundtrip with a generator)
    std::string output;  // empty: stdout
    std::optional<double> tol;
    int omega_grid = 256;
    bool plot = false;
    std::string generator;  // "h_nu" or empty
    int nu = 0;
    double r = 0.5;
    int tau_start = 1;
};

/// Throws InvalidData for an inconsistent configuration.
void validate(const JobConfig& cfg);

Tolerance tolerance_of(const JobConfig& cfg);

int cmd_solve(const JobConfig& cfg, std::ostream& log);
int cmd_verify(const JobConfig& cfg, std::ostream& log);
int cmd_sweep(const JobConfig& cfg, std::ostream& log);
int cmd_blaschke(const JobConfig& cfg, std::ostream& log);
int cmd_roundtrip(const JobConfig& cfg, std::ostream& log);

/// Validates, dispatches and maps input errors to kInputError.
int run(const JobConfig& cfg, std::ostream& log);

/// Path of the SVG written beside `output` (extension replaced by .svg).
std::string plot_path(const std::string& output);

}  // namespace royal::cli
