#include <bhp/error.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/records.hpp"

namespace {

using bhp::cli::ExperimentConfig;

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

ExperimentConfig run_config(const std::string& name, int t, int n) {
  ExperimentConfig c;
  c.named = name;
  c.t = t;
  c.n = n;
  c.trials = 40;
  c.seed = 5;
  c.format = bhp::cli::Format::kJsonl;
  return c;
}

TEST(Wilson, MatchesClosedForm) {
  // 8 of 10; reference values from statsmodels proportion_confint(method="wilson").
  const auto ci = bhp::cli::wilson_interval(8, 10);
  EXPECT_NEAR(ci.low, 0.4901624715, 1e-9);
  EXPECT_NEAR(ci.high, 0.9433178485, 1e-9);
  const auto all = bhp::cli::wilson_interval(10, 10);
  EXPECT_DOUBLE_EQ(all.high, 1.0);
  EXPECT_GT(all.low, 0.6);
}

TEST(CsvCell, QuotesAndFormats) {
  EXPECT_EQ(bhp::cli::csv_cell(nullptr), "");
  EXPECT_EQ(bhp::cli::csv_cell(3), "3");
  EXPECT_EQ(bhp::cli::csv_cell(0.25), "0.25");
  EXPECT_EQ(bhp::cli::csv_cell("1/2"), "1/2");
  EXPECT_EQ(bhp::cli::csv_cell(nlohmann::ordered_json::array({1, 2})), "\"[1,2]\"");
  EXPECT_EQ(bhp::cli::csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(RecordWriter, CsvHasFixedColumnsAndEmptyCells) {
  std::ostringstream out;
  bhp::cli::RecordWriter w(out, bhp::cli::Format::kCsv, {"a", "b", "c"});
  bhp::cli::Record r;
  r["c"] = 1;
  r["a"] = "x";
  w.write(r);
  EXPECT_EQ(out.str(), "a,b,c\nx,,1\n");
}

TEST(RunCommand, SummaryCountsMatchTrialRecords) {
  for (auto protocol : {bhp::cli::Protocol::kClassical, bhp::cli::Protocol::kQuantum}) {
    std::ostringstream out;
    ASSERT_EQ(bhp::cli::cmd_run(protocol, run_config("majority", 3, 30), out), bhp::cli::kExitOk);
    const auto lines = parse_lines(out.str());
    ASSERT_EQ(lines.size(), 41U);
    int successes = 0;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
      EXPECT_EQ(lines[i]["record"], "trial");
      EXPECT_EQ(lines[i]["trial"], i);
      successes += lines[i]["guess"] == lines[i]["b"];
    }
    const auto& summary = lines.back();
    EXPECT_EQ(summary["record"], "summary");
    EXPECT_EQ(summary["successes"], successes);
    EXPECT_LE(summary["wilson_low"].get<double>(), summary["success_rate"].get<double>());
    EXPECT_GE(summary["wilson_high"].get<double>(), summary["success_rate"].get<double>());
  }
}

TEST(RunCommand, OutputIndependentOfThreadCount) {
  auto c = run_config("parity", 2, 40);
  std::ostringstream one;
  std::ostringstream many;
  c.threads = 1;
  bhp::cli::cmd_run(bhp::cli::Protocol::kQuantum, c, one);
  c.threads = 4;
  bhp::cli::cmd_run(bhp::cli::Protocol::kQuantum, c, many);
  EXPECT_EQ(one.str(), many.str());
}

TEST(RunCommand, ClassicalRejectsParity) {
  std::ostringstream out;
  try {
    bhp::cli::cmd_run(bhp::cli::Protocol::kClassical, run_config("parity", 2, 20), out);
    FAIL() << "expected a guard rejection";
  } catch (const bhp::GuardRejected& e) {
    EXPECT_STREQ(e.what(), "sdeg(f) = 2 > 1");
  }
}

TEST(RunCommand, QuantumCostIsCopiesTimesQubits) {
  std::ostringstream out;
  bhp::cli::cmd_run(bhp::cli::Protocol::kQuantum, run_config("parity", 2, 200), out);
  const auto summary = parse_lines(out.str()).back();
  EXPECT_EQ(summary["m"], 11);
  EXPECT_EQ(summary["cost_unit"], "qubits");
  EXPECT_DOUBLE_EQ(summary["message_bits"].get<double>(), 11.0 * 10.0);
}

TEST(AnalyzeCommand, ReportsDegreesAndReductionStatus) {
  struct Case {
    const char* name;
    int t;
    int phdeg;
    int sdeg;
    double bias;
  };
  for (const Case& k : {Case{"parity", 2, 2, 2, 1.0}, Case{"majority", 3, 1, 1, 1.0 / 3.0}}) {
    ExperimentConfig c;
    c.named = k.name;
    c.t = k.t;
    c.format = bhp::cli::Format::kJsonl;
    std::ostringstream out;
    bhp::cli::cmd_analyze(c, out);
    const auto r = nlohmann::json::parse(out.str());
    EXPECT_EQ(r["phdeg"], k.phdeg) << k.name;
    EXPECT_EQ(r["sdeg"], k.sdeg) << k.name;
    EXPECT_NEAR(r["bias"].get<double>(), k.bias, 1e-9) << k.name;
  }
  ExperimentConfig c;
  c.named = "nae";
  c.t = 3;
  c.format = bhp::cli::Format::kJsonl;
  std::ostringstream out;
  bhp::cli::cmd_analyze(c, out);
  const auto r = nlohmann::json::parse(out.str());
  EXPECT_EQ(r["sdeg"], 2);
  EXPECT_EQ(r["reduction"], "NAE-odd: no gadget");
}

TEST(ReduceCommand, ThresholdsOneThreePass) {
  ExperimentConfig c;
  c.t = 4;
  c.thresholds = {1, 3};
  c.have_thresholds = true;
  c.format = bhp::cli::Format::kJsonl;
  std::ostringstream out;
  EXPECT_EQ(bhp::cli::cmd_reduce(c, out), bhp::cli::kExitOk);
  const auto r = nlohmann::json::parse(out.str());
  EXPECT_EQ(r["detail"]["message"], "pass, 0 counterexamples");
  EXPECT_EQ(r["detail"]["gadget"]["a"], 2);
  EXPECT_EQ(r["detail"]["gadget"]["b"], 0);
}

TEST(HardnessCommand, AllChecksClean) {
  ExperimentConfig c;
  c.n = 8;
  c.alpha = "1";
  c.cases = 10;
  c.sigma_samples = 4;
  c.format = bhp::cli::Format::kJsonl;
  std::ostringstream out;
  EXPECT_EQ(bhp::cli::cmd_hardness(c, out), bhp::cli::kExitOk);
  const auto lines = parse_lines(out.str());
  ASSERT_EQ(lines.size(), 4U);
  for (const auto& r : lines) EXPECT_EQ(r["violations"], 0) << r["check"];
  EXPECT_LE(lines[1]["max_discrepancy"].get<double>(), 1e-10);
}

TEST(Config, RejectsAmbiguousFunctionSource) {
  ExperimentConfig c;
  c.named = "parity";
  c.function_file = "f.json";
  c.t = 2;
  EXPECT_THROW(bhp::cli::resolve_function(c), bhp::InvalidArgument);
  ExperimentConfig none;
  EXPECT_THROW(bhp::cli::resolve_function(none), bhp::InvalidArgument);
}

}  // namespace
