#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "letterfeat/featuresets.hpp"
#include "letterfeat/mlp.hpp"
#include "letterfeat/rng.hpp"

namespace letterfeat {

struct TrainConfig {
    double eta = 0.5;
    std::size_t max_epochs = 5000;
    double epsilon = 0.01;
    std::uint64_t seed = 1;
    double noise_rate = 0.0;
    bool shuffle = true;

    /// Throws std::invalid_argument. epsilon = 0 is accepted (never stops early).
    void validate() const;
};

/// Partial derivatives of the pattern error, shaped like the network's parameters.
struct Gradients {
    Matrix w1;
    std::vector<double> b1;
    Matrix w2;
    std::vector<double> b2;

    static Gradients zeros_like(const Mlp& net);

    /// Concatenation in parameter order: w1 row-major, b1, w2 row-major, b2.
    std::vector<double> flat() const;
};

struct TrainReport {
    std::size_t epochs_run = 0;
    bool converged = false;
    std::vector<double> sse_curve;
    double final_sse = 0.0;
    double final_accuracy = 0.0;
};

/// Calls fn(double&) for every network parameter in Gradients::flat() order.
template <class Fn>
void for_each_parameter(Mlp& net, Fn&& fn)
{
    for (double& w : net.w1.values()) fn(w);
    for (double& b : net.b1) fn(b);
    for (double& w : net.w2.values()) fn(w);
    for (double& b : net.b2) fn(b);
}

/// Squared error of one pattern, summed over outputs (no 1/2 factor).
double pattern_error(const Mlp& net, std::span<const double> input, std::span<const double> target);

/// Total SSE over the dataset: sum over patterns and outputs of (t - o)^2.
double sse(const Mlp& net, const Dataset& dataset);

/// Slope of the transfer function given the unit's output and alpha.
using SlopeFn = double (*)(double output, double alpha);

/// Analytic gradient of pattern_error by backpropagation. `slope` exists so
/// tests can inject a broken derivative; production code uses the default.
Gradients backprop_gradients(const Mlp& net, std::span<const double> input, std::span<const double> target,
                             SlopeFn slope = &sigmoid_slope);

/// Central differences (E(p + h) - E(p - h)) / 2h for every parameter p.
Gradients finite_diff_gradients(const Mlp& net, std::span<const double> input, std::span<const double> target,
                                double step = 1e-5);

/// Worst-case disagreement between two gradient sets.
struct GradientComparison {
    double max_relative_error = 0.0;   // over entries whose reference magnitude >= abs_floor
    double max_absolute_error = 0.0;   // over entries whose reference magnitude < abs_floor
    bool within(double rel_tol, double abs_tol) const
    {
        return max_relative_error <= rel_tol && max_absolute_error <= abs_tol;
    }
};

/// |a - r| / max(|a|, |r|) when |r| >= abs_floor, else |a - r| compared absolutely.
GradientComparison compare_gradients(const Gradients& analytic, const Gradients& reference,
                                     double abs_floor = 1e-8);

/// Online backprop: one update per pattern, patterns reshuffled every epoch.
///
/// Per epoch the rng supplies, in order: dataset.size()-1 draws for the
/// Fisher-Yates shuffle (if enabled), then 81 draws per presented pattern when
/// noise_rate > 0. After each epoch the SSE on the clean dataset is recorded and
/// training stops once it is <= epsilon.
TrainReport train(Mlp& net, const Dataset& dataset, const TrainConfig& config, Rng& rng);

/// argmax over output activations, ties to the lowest index.
std::size_t classify(const Mlp& net, std::span<const double> input);
std::size_t argmax(std::span<const double> values);

double accuracy(const Mlp& net, const Dataset& dataset);

/// `epoch sse` table, one line per epoch, 1-based epochs.
std::string format_sse_curve(const TrainReport& report);

}  // namespace letterfeat
