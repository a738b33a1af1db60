#include "commands.hpp"

#include <bhp/classical.hpp>
#include <bhp/error.hpp>
#include <bhp/hardness.hpp>
#include <bhp/quantum.hpp>
#include <bhp/reduction.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <thread>

#include "records.hpp"

namespace bhp::cli {
namespace {

constexpr double kRHatTolerance = 1e-10;
constexpr double kUTolerance = 1e-12;
constexpr double kMassTolerance = 1e-12;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// FNV-1a over the rows of the table (one byte per row: 1 for -1, 0 for +1).
std::uint64_t table_digest(const BooleanFunction& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t r = 0; r < f.size(); ++r) {
    h ^= f.at_row(r) < 0 ? 1U : 0U;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::ordered_json subset_json(std::uint32_t mask) {
  nlohmann::ordered_json s = nlohmann::ordered_json::array();
  for (int i = 0; i < 32; ++i) {
    if (mask >> i & 1U) s.push_back(i + 1);
  }
  return s;
}

nlohmann::ordered_json reduction_status(const FunctionSpec& spec) {
  const auto sym = spec.symmetric ? spec.symmetric : symmetric_spec_of(spec.function);
  if (!sym) return "not applicable: not symmetric";
  if (sign_changes(*sym) < 2) return "not applicable: fewer than 2 sign changes";
  try {
    const ReductionGadget g = find_gadget(*sym);
    return {{"a", g.a}, {"b", g.b}, {"flipped", g.flipped}};
  } catch (const NoGadget& e) {
    return e.what();
  }
}

/// Runs job(i) for i in [0, count) on up to `threads` workers.
void parallel_for(int count, unsigned threads, const std::function<void(int)>& job) {
  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max(count, 1)));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) job(i);
    });
  }
}

struct Output {
  std::ofstream file;
  std::ostream* stream;

  Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw Error("cannot open output file " + path);
    stream = &file;
  }
};

}  // namespace

const char* to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kClassical: return "classical";
    case Protocol::kQuantum: return "quantum";
    case Protocol::kUniform: return "uniform";
  }
  return "unknown";
}

const std::vector<std::string>& run_columns() {
  static const std::vector<std::string> columns = {
      "record", "protocol", "function", "n", "t", "alpha", "epsilon", "m", "seed", "trial", "b", "guess",
      "success", "statistic", "message_bits", "cost_unit", "trials", "successes", "success_rate",
      "wilson_low", "wilson_high", "guarantee"};
  return columns;
}

const std::vector<std::string>& check_columns() {
  static const std::vector<std::string> columns = {"check", "function", "params", "cases", "max_discrepancy",
                                                   "violations", "detail"};
  return columns;
}

int cmd_analyze(const ExperimentConfig& config, std::ostream& out) {
  const FunctionSpec spec = resolve_function(config);
  const BooleanFunction& f = spec.function;
  const FourierSpectrum fs = fourier_transform(f);

  nlohmann::ordered_json spectrum = nlohmann::ordered_json::array();
  for (std::uint32_t s = 0; s < fs.coeffs.size(); ++s) {
    if (std::abs(fs[s]) > kFourierZero) spectrum.push_back({{"S", subset_json(s)}, {"coeff", fs[s]}});
  }
  const SignDegree sd = sign_degree(f);
  const auto bound = alpha_bound(f);

  nlohmann::ordered_json report;
  report["function"] = spec.label;
  report["t"] = f.arity();
  report["truth_table_digest"] = hex64(table_digest(f));
  report["phdeg"] = pure_high_degree(fs);
  report["sdeg"] = sd.degree;
  report["bias"] = sd.witness.bias();
  report["l1"] = fourier_l1(fs);
  report["alpha_bound"] = bound ? nlohmann::ordered_json(*bound) : nlohmann::ordered_json(nullptr);
  report["reduction"] = reduction_status(spec);
  report["spectrum"] = spectrum;

  Output sink(config.out, out);
  std::ostream& os = *sink.stream;
  switch (config.format) {
    case Format::kJsonl:
      os << report.dump() << '\n';
      break;
    case Format::kCsv:
      os << "key,value\n";
      for (const auto& [k, v] : report.items()) os << k << ',' << csv_cell(v) << '\n';
      break;
    case Format::kText:
      for (const auto& [k, v] : report.items()) {
        if (k == "spectrum") continue;
        os << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_null() ? "none" : v.dump()) << '\n';
      }
      os << "spectrum:\n";
      for (const auto& e : spectrum) os << "  " << e["S"].dump() << " " << e["coeff"].dump() << '\n';
      break;
  }
  return kExitOk;
}

int cmd_run(Protocol protocol, const ExperimentConfig& config, std::ostream& out) {
  if (config.trials < 1) throw InvalidArgument("--trials must be positive");
  const FunctionSpec spec = resolve_function(config);
  const BooleanFunction& f = spec.function;
  const PartitionParams params = resolve_params(config, f.arity());

  std::function<ProtocolOutcome(const PartitionInstance&, Rng&)> run;
  int m = 0;
  std::optional<double> epsilon;
  std::string unit = "bits";
  if (protocol == Protocol::kClassical) {
    auto proto = std::make_shared<ClassicalProtocol>(ClassicalProtocol::prepare(f, params, config.epsilon));
    m = proto->samples();
    epsilon = config.epsilon;
    run = [proto](const PartitionInstance& inst, Rng& rng) { return proto->run(inst, rng); };
  } else if (protocol == Protocol::kQuantum) {
    auto proto = std::make_shared<QuantumProtocol>(QuantumProtocol::prepare(f, params, config.epsilon));
    m = proto->copies();
    epsilon = config.epsilon;
    unit = "qubits";
    if (!config.dump_matrix.empty()) {
      std::ofstream dump(config.dump_matrix, std::ios::binary);
      if (!dump) throw Error("cannot open matrix dump file " + config.dump_matrix);
      dump << matrix_audit_json(proto->matrix(), unitary_dilation(proto->matrix())).dump(2) << '\n';
    }
    run = [proto](const PartitionInstance& inst, Rng& rng) { return proto->run(inst, rng); };
  } else {
    auto proto = std::make_shared<UniformProtocol>(UniformProtocol::prepare(f, config.sample_count));
    m = config.sample_count;
    run = [proto](const PartitionInstance& inst, Rng& rng) { return proto->run(inst, rng); };
  }

  struct Trial {
    Pm b;
    ProtocolOutcome outcome;
  };
  std::vector<Trial> trials(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int k) {
    Rng inst_rng(config.seed, Stream::kInstance, static_cast<std::uint64_t>(k));
    const Pm b = inst_rng.coin();
    const PartitionInstance inst = generate_instance(f, params, b, inst_rng);
    Rng run_rng(config.seed, Stream::kProtocol, static_cast<std::uint64_t>(k));
    trials[static_cast<std::size_t>(k)] = {b, run(inst, run_rng)};
  });

  Record common;
  common["protocol"] = to_string(protocol);
  common["function"] = spec.label;
  common["n"] = params.n;
  common["t"] = params.t;
  common["alpha"] = params.alpha.str();
  common["epsilon"] = epsilon ? Record(*epsilon) : Record(nullptr);
  common["m"] = m;
  common["seed"] = config.seed;

  Output sink(config.out, out);
  RecordWriter writer(*sink.stream, config.format, run_columns());
  int successes = 0;
  double cost = 0.0;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const Trial& tr = trials[k];
    const bool ok = tr.outcome.guess == tr.b;
    successes += ok;
    cost += static_cast<double>(tr.outcome.message_bits);
    Record r = common;
    r["record"] = "trial";
    r["trial"] = k;
    r["b"] = tr.b;
    r["guess"] = tr.outcome.guess;
    r["success"] = ok;
    r["statistic"] = tr.outcome.statistic;
    r["message_bits"] = tr.outcome.message_bits;
    r["cost_unit"] = unit;
    writer.write(r);
  }
  const Interval ci = wilson_interval(successes, config.trials);
  Record s = common;
  s["record"] = "summary";
  s["message_bits"] = cost / config.trials;
  s["cost_unit"] = unit;
  s["trials"] = config.trials;
  s["successes"] = successes;
  s["success_rate"] = static_cast<double>(successes) / config.trials;
  s["wilson_low"] = ci.low;
  s["wilson_high"] = ci.high;
  s["guarantee"] = epsilon ? Record(1 - 2 * *epsilon) : Record(nullptr);
  writer.write(s);
  return kExitOk;
}

int cmd_reduce(const ExperimentConfig& config, std::ostream& out) {
  const FunctionSpec spec = resolve_function(config);
  const auto sym = spec.symmetric ? spec.symmetric : symmetric_spec_of(spec.function);
  if (!sym) throw InvalidArgument("reduce needs a symmetric function");
  const int n_small = config.n == 0 ? 8 : config.n;
  Rng rng(config.seed, Stream::kReduction, 0);
  const ReductionReport report = verify_reduction(*sym, n_small, config.sigma_samples, rng);

  Record params;
  params["n"] = n_small;
  params["t"] = sym->t;
  params["thresholds"] = sym->thresholds;
  params["leading_sign"] = sym->leading_sign;
  params["sigma_samples"] = config.sigma_samples;
  params["seed"] = config.seed;

  Record detail;
  detail["status"] = to_string(report.status);
  detail["gadget"] = report.gadget ? Record(gadget_json(*report.gadget)) : Record(nullptr);
  detail["message"] = report.status == ReductionReport::Status::kPass ? "pass, " + report.message : report.message;
  if (report.counterexample) detail["counterexample"] = to_json(*report.counterexample);

  Record r;
  r["check"] = "reduction";
  r["function"] = spec.label;
  r["params"] = params;
  r["cases"] = report.cases;
  r["max_discrepancy"] = nullptr;
  r["violations"] = report.counterexamples;
  r["detail"] = detail;

  Output sink(config.out, out);
  RecordWriter writer(*sink.stream, config.format, check_columns());
  writer.write(r);
  switch (report.status) {
    case ReductionReport::Status::kPass: return kExitOk;
    case ReductionReport::Status::kNoGadget: return kExitGuard;
    case ReductionReport::Status::kFail: return kExitCheckFailed;
  }
  return kExitError;
}

namespace {

Record hardness_params(const PartitionParams& p) {
  Record r;
  r["n"] = p.n;
  r["t"] = p.t;
  r["alpha"] = p.alpha.str();
  return r;
}

Record check_tvd(const BooleanFunction& f, const PartitionParams& params, const ExperimentConfig& config) {
  const std::size_t size = config.set_size.value_or(std::size_t{1} << (params.n - 1));
  double worst = 0.0;
  long violations = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  long samples = 0;
  for (int k = 0; k < config.cases; ++k) {
    Rng set_rng(config.seed, Stream::kHardness, static_cast<std::uint64_t>(k));
    const MessageSet a = MessageSet::random(params.n, size, set_rng);
    for (int s = 0; s < config.sigma_samples; ++s) {
      Rng sigma_rng = set_rng.split(static_cast<std::uint64_t>(s) + 1);
      const auto d = induced_distributions(f, a, Permutation::random(params.n, sigma_rng), params);
      double mass_p = 0.0;
      double mass_q = 0.0;
      for (std::size_t z = 0; z < d.p.size(); ++z) {
        mass_p += d.p[z];
        mass_q += d.q[z];
      }
      const double dev = std::max(std::abs(mass_p - 1), std::abs(mass_q - 1));
      const double v = tvd(d.p, d.q);
      worst = std::max(worst, dev);
      violations += dev > kMassTolerance || v < 0 || v > 2;
      sum += v;
      sum_sq += v * v;
      ++samples;
    }
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = samples > 1 ? (sum_sq - samples * mean * mean) / static_cast<double>(samples - 1) : 0.0;
  Record p = hardness_params(params);
  p["set_size"] = size;
  p["sigma_samples"] = config.sigma_samples;
  Record r;
  r["check"] = "tvd";
  r["params"] = p;
  r["cases"] = samples;
  r["max_discrepancy"] = worst;
  r["violations"] = violations;
  r["detail"] = {{"tvd_mean", mean}, {"tvd_std_error", std::sqrt(std::max(var, 0.0) / static_cast<double>(samples))}};
  return r;
}

Record check_rhat(const BooleanFunction& f, const PartitionParams& params, const ExperimentConfig& config) {
  const std::uint32_t subsets = 1U << params.active_blocks();
  double worst = 0.0;
  long violations = 0;
  long cases = 0;
  for (int k = 0; k < config.cases; ++k) {
    Rng rng(config.seed, Stream::kHardness, static_cast<std::uint64_t>(k));
    const std::size_t size = config.set_size.value_or(1 + rng.below(std::uint64_t{1} << params.n));
    const MessageSet a = MessageSet::random(params.n, size, rng);
    const Permutation sigma = Permutation::random(params.n, rng);
    for (std::uint32_t v = 0; v < subsets; ++v) {
      const double formula = r_hat_formula(f, a, sigma, v, params);
      const double brute = r_hat_bruteforce(f, a, sigma, v, params);
      const double diff = std::abs(formula - brute);
      worst = std::max(worst, diff);
      violations += diff > kRHatTolerance || (std::popcount(v) % 2 == 0 && formula != 0.0);
      ++cases;
    }
  }
  Record r;
  r["check"] = "rhat";
  r["params"] = hardness_params(params);
  r["cases"] = cases;
  r["max_discrepancy"] = worst;
  r["violations"] = violations;
  r["detail"] = {{"tolerance", kRHatTolerance}};
  return r;
}

Record check_u(const BooleanFunction& f, const PartitionParams& params, const ExperimentConfig& config) {
  const double p_sigma = permutation_probability(params.n);
  const auto active = static_cast<std::uint32_t>(params.active_positions());
  double worst = 0.0;
  long violations = 0;
  for (int k = 0; k < config.cases; ++k) {
    Rng rng(config.seed, Stream::kHardness, static_cast<std::uint64_t>(k));
    const Permutation sigma = Permutation::random(params.n, rng);
    PmVector w(static_cast<std::size_t>(params.active_blocks()));
    for (Pm& v : w) v = rng.coin();
    // Half the draws stay inside sigma^-1([alpha n]) so nonzero cases occur.
    std::uint32_t s = 0;
    if (k % 2 == 0) {
      s = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << params.n));
    } else {
      for (int i = 0; i < params.n; ++i) {
        if (static_cast<std::uint32_t>(sigma(i)) < active && rng.coin() > 0) s |= 1U << i;
      }
    }
    const double diff = std::abs(u_formula(f, sigma, w, s, params) - u_bruteforce(f, sigma, w, s, params)) / p_sigma;
    worst = std::max(worst, diff);
    violations += diff > kUTolerance;
  }
  Record r;
  r["check"] = "u";
  r["params"] = hardness_params(params);
  r["cases"] = config.cases;
  r["max_discrepancy"] = worst;
  r["violations"] = violations;
  r["detail"] = {{"normalized_by", "p_sigma"}, {"tolerance", kUTolerance}};
  return r;
}

Record check_kkl(const PartitionParams& params, const ExperimentConfig& config) {
  const std::vector<double> deltas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  long violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < config.cases; ++k) {
    Rng rng(config.seed, Stream::kHardness, static_cast<std::uint64_t>(k));
    const std::size_t size = config.set_size.value_or(1 + rng.below(std::uint64_t{1} << params.n));
    const KklReport report = kkl_check(MessageSet::random(params.n, size, rng), deltas);
    violations += report.violations;
    for (const KklRow& row : report.rows) min_margin = std::min(min_margin, row.margin());
  }
  Record p;
  p["n"] = params.n;
  p["deltas"] = deltas;
  Record r;
  r["check"] = "kkl";
  r["params"] = p;
  r["cases"] = static_cast<long>(config.cases) * static_cast<long>(deltas.size());
  r["max_discrepancy"] = nullptr;
  r["violations"] = violations;
  r["detail"] = {{"min_margin", min_margin}};
  return r;
}

}  // namespace

int cmd_hardness(const ExperimentConfig& config, std::ostream& out) {
  if (config.cases < 1) throw InvalidArgument("--cases must be positive");
  const bool any_source = !config.function_file.empty() || !config.named.empty() || config.have_thresholds;
  const FunctionSpec spec = any_source ? resolve_function(config) : named_function("parity", 2);
  const int n = config.n == 0 ? 8 : config.n;
  ExperimentConfig sized = config;
  sized.n = n;

  std::vector<std::string> checks;
  if (config.check == "all") {
    checks = {"tvd", "rhat", "u", "kkl"};
  } else if (config.check == "tvd" || config.check == "rhat" || config.check == "u" || config.check == "kkl") {
    checks = {config.check};
  } else {
    throw InvalidArgument("unknown check '" + config.check + "' (expected tvd, rhat, u, kkl or all)");
  }

  Output sink(config.out, out);
  RecordWriter writer(*sink.stream, config.format, check_columns());
  long violations = 0;
  for (const auto& c : checks) {
    Record r;
    if (c == "kkl") {
      r = check_kkl(PartitionParams{n, 1, Rational(1, 1)}, sized);
    } else {
      const PartitionParams params = resolve_params(sized, spec.function.arity());
      if (c == "tvd") r = check_tvd(spec.function, params, sized);
      if (c == "rhat") r = check_rhat(spec.function, params, sized);
      if (c == "u") r = check_u(spec.function, params, sized);
      r["function"] = spec.label;
    }
    violations += r["violations"].get<long>();
    writer.write(r);
  }
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace bhp::cli
