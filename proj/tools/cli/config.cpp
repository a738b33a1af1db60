#include "config.hpp"

#include <bhp/error.hpp>

namespace bhp::cli {

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  if (name == "jsonl") return Format::kJsonl;
  throw InvalidArgument("unknown format '" + name + "' (expected text, csv or jsonl)");
}

FunctionSpec resolve_function(const ExperimentConfig& config) {
  const int sources = !config.function_file.empty() + !config.named.empty() + config.have_thresholds;
  if (sources != 1) {
    throw InvalidArgument("give exactly one of --function FILE, --named NAME or --thresholds LIST");
  }
  if (!config.function_file.empty()) {
    FunctionSpec spec = load_function_spec(config.function_file);
    if (config.t && *config.t != spec.function.arity()) {
      throw InvalidArgument("--t " + std::to_string(*config.t) + " disagrees with the function file (t = " +
                            std::to_string(spec.function.arity()) + ")");
    }
    return spec;
  }
  if (!config.t) throw InvalidArgument("--t is required with --named and --thresholds");
  if (!config.named.empty()) return named_function(config.named, *config.t);
  return symmetric_function({*config.t, config.thresholds, static_cast<Pm>(config.leading_sign)});
}

PartitionParams resolve_params(const ExperimentConfig& config, int t) {
  PartitionParams params{config.n, t, Rational::parse(config.alpha)};
  params.validate();
  return params;
}

}  // namespace bhp::cli
