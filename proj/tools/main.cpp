#include <bhp/error.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using bhp::cli::ExperimentConfig;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

void add_function_options(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--function", c.function_file, "Function-spec JSON file");
  app->add_option("--named", c.named, "Named function: parity, and, or, majority, nae, dictator");
  app->add_option("--t", c.t, "Arity (with --named or --thresholds)");
  app->add_option("--thresholds", c.thresholds, "Symmetric thresholds, e.g. 1,3")
      ->delimiter(',')
      ->each([&c](const std::string&) { c.have_thresholds = true; });
  app->add_option("--leading-sign", c.leading_sign, "Value at weight 0 for --thresholds")->check(CLI::IsMember({-1, 1}));
}

void add_output_options(CLI::App* app, ExperimentConfig& c, std::string& format, const std::string& fallback) {
  app->add_option("--out", c.out, "Output path (default stdout)");
  app->add_option("--format", format, "Output format (default " + fallback + ")")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}));
}

bhp::cli::Format resolve_format(const std::string& format, bhp::cli::Format fallback) {
  if (format.empty()) return fallback;
  const auto f = bhp::cli::parse_format(format);
  if (f == bhp::cli::Format::kText && fallback != bhp::cli::Format::kText) {
    throw bhp::InvalidArgument("--format text is only available for analyze");
  }
  return f;
}

void add_params_options(CLI::App* app, ExperimentConfig& c) {
  app->add_option("--n", c.n, "Input length n");
  app->add_option("--alpha", c.alpha, "Active fraction alpha as P/Q")->capture_default_str();
  app->add_option("--seed", c.seed, "Root seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean Hidden Partition toolkit: function analysis, protocol runs, reduction and hardness checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bhp 0.1.0");

  ExperimentConfig c;
  c.threads = std::max(1U, std::thread::hardware_concurrency());
  std::string format;

  auto* analyze = app.add_subcommand("analyze", "Fourier spectrum, degrees, bias, alpha bound, reduction status");
  add_function_options(analyze, c);
  add_output_options(analyze, c, format, "text");

  const std::string columns_help = "Records (csv header / jsonl keys): " + join(bhp::cli::run_columns()) +
                                   ". One 'trial' record per trial, then one 'summary' record.";
  struct RunCommand {
    const char* name;
    const char* help;
    bhp::cli::Protocol protocol;
  };
  const RunCommand runs[] = {
      {"run-classical", "Sampling protocol for sdeg(f) <= 1", bhp::cli::Protocol::kClassical},
      {"run-quantum", "Hadamard-test protocol for sdeg(f) <= 2", bhp::cli::Protocol::kQuantum},
      {"run-uniform", "Single-sample protocol for phdeg(f) <= 1 under uniform inputs", bhp::cli::Protocol::kUniform},
  };
  std::vector<std::pair<CLI::App*, bhp::cli::Protocol>> run_apps;
  for (const auto& r : runs) {
    auto* sub = app.add_subcommand(r.name, r.help);
    sub->footer(columns_help);
    add_function_options(sub, c);
    add_params_options(sub, c);
    add_output_options(sub, c, format, "csv");
    sub->add_option("--epsilon", c.epsilon, "Per-tail error epsilon")->capture_default_str();
    sub->add_option("--trials", c.trials, "Number of independent trials")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (output order is fixed)");
    if (r.protocol == bhp::cli::Protocol::kUniform) {
      sub->add_option("--sample-count", c.sample_count, "Positions Alice sends")->capture_default_str();
    }
    if (r.protocol == bhp::cli::Protocol::kQuantum) {
      sub->add_option("--dump-matrix", c.dump_matrix, "Write A, ||A|| and U as JSON to this path");
    }
    run_apps.emplace_back(sub, r.protocol);
  }

  const std::string check_help = "Records (csv header / jsonl keys): " + join(bhp::cli::check_columns()) + ".";

  auto* reduce = app.add_subcommand("reduce", "Exhaustive check of the parity-to-f reduction");
  reduce->footer(check_help + " Exit 2 when no gadget exists, 3 on a counterexample.");
  add_function_options(reduce, c);
  add_output_options(reduce, c, format, "jsonl");
  reduce->add_option("--n", c.n, "Parity instance length (even, default 8)");
  reduce->add_option("--sigma-samples", c.sigma_samples, "Random permutations per input")->capture_default_str();
  reduce->add_option("--seed", c.seed, "Root seed")->capture_default_str();

  auto* hardness = app.add_subcommand("hardness", "Closed forms against brute force; default function PARITY_2");
  hardness->footer(check_help + " Exit 3 on any violation.");
  add_function_options(hardness, c);
  add_params_options(hardness, c);
  add_output_options(hardness, c, format, "jsonl");
  hardness->add_option("--check", c.check, "Sub-check")
      ->check(CLI::IsMember({"tvd", "rhat", "u", "kkl", "all"}))
      ->capture_default_str();
  hardness->add_option("--cases", c.cases, "Random cases per check")->capture_default_str();
  hardness->add_option("--sigma-samples", c.sigma_samples, "Permutations per message set (tvd)")
      ->capture_default_str();
  hardness->add_option("--set-size", c.set_size, "Message-set size (default: random, or 2^(n-1) for tvd)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      c.format = resolve_format(format, bhp::cli::Format::kText);
      return bhp::cli::cmd_analyze(c, std::cout);
    }
    for (const auto& [sub, protocol] : run_apps) {
      if (!sub->parsed()) continue;
      c.format = resolve_format(format, bhp::cli::Format::kCsv);
      return bhp::cli::cmd_run(protocol, c, std::cout);
    }
    c.format = resolve_format(format, bhp::cli::Format::kJsonl);
    if (reduce->parsed()) return bhp::cli::cmd_reduce(c, std::cout);
    if (hardness->parsed()) return bhp::cli::cmd_hardness(c, std::cout);
  } catch (const bhp::GuardRejected& e) {
    std::cerr << "bhp: " << e.what() << '\n';
    return bhp::cli::kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "bhp: error: " << e.what() << '\n';
    return bhp::cli::kExitError;
  }
  return bhp::cli::kExitError;
}
