// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "letterfeat/kernels.hpp"

using namespace letterfeat;

namespace {

GradCheckOptions sweep_options(benchmark::State& state)
{
    GradCheckOptions opt;
    opt.instances = static_cast<std::size_t>(state.range(0));
    return opt;
}

void BM_GradCheckSerial(benchmark::State& state)
{
    const auto opt = sweep_options(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(gradient_check_sweep_serial(opt));
}

void BM_GradCheckOmp(benchmark::State& state)
{
    const auto opt = sweep_options(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(gradient_check_sweep_omp(opt));
}

std::vector<std::uint64_t> seeds(benchmark::State& state)
{
    std::vector<std::uint64_t> s;
    for (std::int64_t i = 1; i <= state.range(0); ++i)
        s.push_back(static_cast<std::uint64_t>(i));
    return s;
}

TrainConfig short_training()
{
    TrainConfig cfg;
    cfg.max_epochs = 200;
    return cfg;
}

void BM_SeedSweepSerial(benchmark::State& state)
{
    const auto s = seeds(state);
    const Dataset data = targets_experiment2();
    for (auto _ : state)
        benchmark::DoNotOptimize(train_seeds_serial(s, data, 6, short_training()));
}

void BM_SeedSweepOmp(benchmark::State& state)
{
    const auto s = seeds(state);
    const Dataset data = targets_experiment2();
    for (auto _ : state)
        benchmark::DoNotOptimize(train_seeds_omp(s, data, 6, short_training()));
}

std::vector<InputVector> noisy_inputs(std::size_t count)
{
    Rng rng(3);
    std::vector<InputVector> inputs;
    for (std::size_t i = 0; i < count; ++i)
        inputs.push_back(apply_noise(flatten(builtin_alphabet()[i % 26]), 0.1, rng));
    return inputs;
}

void BM_HiddenActivationsSerial(benchmark::State& state)
{
    Rng rng(1);
    const Mlp net = init_random(6, 10, rng);
    const auto inputs = noisy_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(hidden_activations_serial(net, inputs));
}

void BM_HiddenActivationsOmp(benchmark::State& state)
{
    Rng rng(1);
    const Mlp net = init_random(6, 10, rng);
    const auto inputs = noisy_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(hidden_activations_omp(net, inputs));
}

}  // namespace

BENCHMARK(BM_GradCheckSerial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradCheckOmp)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedSweepSerial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedSweepOmp)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HiddenActivationsSerial)->Arg(26)->Arg(2600);
BENCHMARK(BM_HiddenActivationsOmp)->Arg(26)->Arg(2600);

BENCHMARK_MAIN();
