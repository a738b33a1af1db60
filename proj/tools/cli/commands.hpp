#pragma once

#include <ostream>

#include "config.hpp"

namespace bhp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitCheckFailed = 3;

enum class Protocol { kClassical, kQuantum, kUniform };

const char* to_string(Protocol protocol);

/// Column lists, shared with --help.
const std::vector<std::string>& run_columns();
const std::vector<std::string>& check_columns();

/// Degrees, bias, spectrum and reduction status of one function.
int cmd_analyze(const ExperimentConfig& config, std::ostream& out);
/// `trials` independent instances, one record each, then a summary record.
/// Guard rejections propagate as GuardRejected.
int cmd_run(Protocol protocol, const ExperimentConfig& config, std::ostream& out);
/// Exhaustive reduction check for a symmetric function.
int cmd_reduce(const ExperimentConfig& config, std::ostream& out);
/// Hardness sub-checks: tvd, rhat, u, kkl, or all.
int cmd_hardness(const ExperimentConfig& config, std::ostream& out);

}  // namespace bhp::cli
