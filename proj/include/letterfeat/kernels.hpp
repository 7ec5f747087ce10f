#pragma once

// Data-parallel sweeps. Each kernel has a serial reference and an OpenMP
// version; both produce bit-identical results because every work item owns
// its random stream (derive_seed) and reductions are done in index order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "letterfeat/featuresets.hpp"
#include "letterfeat/mlp.hpp"
#include "letterfeat/trainer.hpp"

namespace letterfeat {

struct NetworkShape {
    std::size_t inputs;
    std::size_t hidden;
    std::size_t outputs;
};

inline constexpr NetworkShape kTinyShape{2, 2, 1};
inline constexpr NetworkShape kGlyphShape{81, 6, 10};

struct GradCheckScale {
    NetworkShape shape{};
    std::size_t instances = 0;
    double max_relative_error = 0.0;
    double max_absolute_error = 0.0;
};

struct GradCheckReport {
    std::vector<GradCheckScale> scales;
    double rel_tol = 1e-6;
    double abs_tol = 1e-8;

    double max_relative_error() const;
    double max_absolute_error() const;
    bool passed() const;
};

struct GradCheckOptions {
    std::uint64_t seed = 1;
    std::size_t instances = 100;  // per scale
    double step = 1e-5;
    SlopeFn slope = &sigmoid_slope;
};

/// One random (network, pattern) instance. 2-2-1 instances get real inputs in
/// [-1, 1] and targets in [0, 1]; 81-input instances get a built-in glyph and a
/// one-hot target.
GradientComparison gradient_check_instance(const NetworkShape& shape, std::uint64_t seed, double step,
                                           SlopeFn slope);

GradCheckReport gradient_check_sweep_serial(const GradCheckOptions& options);
GradCheckReport gradient_check_sweep_omp(const GradCheckOptions& options);

struct SeedOutcome {
    std::uint64_t seed = 0;
    TrainReport report;
};

SeedOutcome train_one_seed(std::uint64_t seed, const Dataset& dataset, std::size_t hidden_count,
                           const TrainConfig& config);

/// Initializes and trains one network per seed (init stream 0, training stream 1
/// of each seed). Training itself stays sequential inside each work item.
std::vector<SeedOutcome> train_seeds_serial(std::span<const std::uint64_t> seeds, const Dataset& dataset,
                                            std::size_t hidden_count, const TrainConfig& config);
std::vector<SeedOutcome> train_seeds_omp(std::span<const std::uint64_t> seeds, const Dataset& dataset,
                                         std::size_t hidden_count, const TrainConfig& config);

/// Hidden activations for each input, one row per input.
Matrix hidden_activations_serial(const Mlp& net, std::span<const InputVector> inputs);
Matrix hidden_activations_omp(const Mlp& net, std::span<const InputVector> inputs);

/// Per-pattern errors followed by an in-order sum; matches sse() exactly.
double batch_sse_serial(const Mlp& net, const Dataset& dataset);
double batch_sse_omp(const Mlp& net, const Dataset& dataset);

}  // namespace letterfeat
