#pragma once

#include <bhp/function_spec.hpp>
#include <bhp/instances.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bhp::cli {

enum class Format { kText, kCsv, kJsonl };

Format parse_format(const std::string& name);

/// Everything a subcommand needs; filled from flags by the front end.
struct ExperimentConfig {
  std::string function_file;
  std::string named;
  std::optional<int> t;
  std::vector<int> thresholds;
  bool have_thresholds = false;
  int leading_sign = 1;

  int n = 0;
  std::string alpha = "1/2";
  double epsilon = 0.1;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  Format format = Format::kCsv;
  unsigned threads = 1;

  int sample_count = 32;
  std::string dump_matrix;

  std::string check = "all";
  int cases = 50;
  int sigma_samples = 20;
  std::optional<std::size_t> set_size;
};

/// Resolves --function FILE, --named NAME --t T, or --thresholds/--leading-sign --t T.
/// Throws InvalidArgument when none or more than one source is given.
FunctionSpec resolve_function(const ExperimentConfig& config);

/// Validated (n, t, alpha); t comes from the function.
PartitionParams resolve_params(const ExperimentConfig& config, int t);

}  // namespace bhp::cli
