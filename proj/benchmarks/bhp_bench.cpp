#include <benchmark/benchmark.h>

#include <bhp/classical.hpp>
#include <bhp/hardness.hpp>
#include <bhp/quantum.hpp>

#include <vector>

namespace {

void BM_WalshHadamard(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  std::vector<double> data(std::size_t{1} << t);
  bhp::Rng rng(1, bhp::Stream::kTest);
  for (double& v : data) v = rng.coin();
  for (auto _ : state) {
    bhp::walsh_hadamard(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_WalshHadamard)->DenseRange(4, 16, 4);

void BM_SignDegreeSymmetric(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  const auto f = bhp::make_symmetric({t, {1, 2, 3}, 1});
  for (auto _ : state) benchmark::DoNotOptimize(bhp::sign_degree(f).degree);
}
BENCHMARK(BM_SignDegreeSymmetric)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

template <class Protocol>
void run_trials(benchmark::State& state, const bhp::BooleanFunction& f, const bhp::PartitionParams& params,
                const Protocol& proto) {
  std::uint64_t k = 0;
  for (auto _ : state) {
    bhp::Rng inst_rng(7, bhp::Stream::kInstance, k);
    const auto inst = bhp::generate_instance(f, params, inst_rng.coin(), inst_rng);
    bhp::Rng run_rng(7, bhp::Stream::kProtocol, k++);
    benchmark::DoNotOptimize(proto.run(inst, run_rng).guess);
  }
}

void BM_ClassicalTrial(benchmark::State& state) {
  const auto f = bhp::majority(3);
  const bhp::PartitionParams params{static_cast<int>(state.range(0)), 3, bhp::Rational(1, 2)};
  run_trials(state, f, params, bhp::ClassicalProtocol::prepare(f, params, 0.1));
}
BENCHMARK(BM_ClassicalTrial)->Arg(300)->Arg(3000);

void BM_QuantumTrial(benchmark::State& state) {
  const auto f = bhp::parity(2);
  const bhp::PartitionParams params{static_cast<int>(state.range(0)), 2, bhp::Rational(1, 2)};
  run_trials(state, f, params, bhp::QuantumProtocol::prepare(f, params, 0.1));
}
BENCHMARK(BM_QuantumTrial)->Arg(200)->Arg(2000);

void BM_UniformTrial(benchmark::State& state) {
  const auto f = bhp::dictator(4);
  const bhp::PartitionParams params{200, 4, bhp::Rational(1, 2)};
  run_trials(state, f, params, bhp::UniformProtocol::prepare(f, 32));
}
BENCHMARK(BM_UniformTrial);

void BM_RHatFormula(benchmark::State& state) {
  const auto f = bhp::parity(2);
  const int n = static_cast<int>(state.range(0));
  const bhp::PartitionParams params{n, 2, bhp::Rational(1, 1)};
  bhp::Rng rng(3, bhp::Stream::kTest);
  const auto a = bhp::MessageSet::random(n, std::size_t{1} << (n - 1), rng);
  const auto sigma = bhp::Permutation::random(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bhp::r_hat_formula(f, a, sigma, 1, params));
}
BENCHMARK(BM_RHatFormula)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
