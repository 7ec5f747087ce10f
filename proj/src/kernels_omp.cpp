#include <omp.h>

#include <algorithm>
#include <stdexcept>

#include "letterfeat/kernels.hpp"

namespace letterfeat {

GradCheckReport gradient_check_sweep_omp(const GradCheckOptions& options)
{
    GradCheckReport report;
    const NetworkShape shapes[] = {kTinyShape, kGlyphShape};
    const std::size_t n = options.instances;
    std::vector<GradientComparison> results(2 * n);

    // Cheap 2-2-1 items and expensive 81-6-10 items share one loop.
#pragma omp parallel for schedule(dynamic)
    for (std::size_t item = 0; item < 2 * n; ++item)
        results[item] = gradient_check_instance(shapes[item / n], derive_seed(options.seed, item), options.step,
                                                options.slope);

    for (std::size_t s = 0; s < 2; ++s) {
        GradCheckScale scale{shapes[s], n, 0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            scale.max_relative_error = std::max(scale.max_relative_error, results[s * n + i].max_relative_error);
            scale.max_absolute_error = std::max(scale.max_absolute_error, results[s * n + i].max_absolute_error);
        }
        report.scales.push_back(scale);
    }
    return report;
}

std::vector<SeedOutcome> train_seeds_omp(std::span<const std::uint64_t> seeds, const Dataset& dataset,
                                         std::size_t hidden_count, const TrainConfig& config)
{
    config.validate();
    std::vector<SeedOutcome> out(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < seeds.size(); ++i)
        out[i] = train_one_seed(seeds[i], dataset, hidden_count, config);
    return out;
}

Matrix hidden_activations_omp(const Mlp& net, std::span<const InputVector> inputs)
{
    for (const InputVector& in : inputs)
        if (in.size() != net.input_count)
            throw std::invalid_argument("hidden_activations: input length mismatch");
    Matrix acts(inputs.size(), net.hidden_count);
#pragma omp parallel for
    for (std::size_t p = 0; p < inputs.size(); ++p) {
        const ForwardTrace t = forward(net, inputs[p]);
        std::copy(t.hidden_act.begin(), t.hidden_act.end(), acts.row(p).begin());
    }
    return acts;
}

double batch_sse_omp(const Mlp& net, const Dataset& dataset)
{
    if (dataset.empty())
        throw std::invalid_argument("dataset is empty");
    for (const Pattern& p : dataset)
        if (p.input.size() != net.input_count || p.target.size() != net.output_count)
            throw std::invalid_argument("batch_sse: pattern shape mismatch");
    std::vector<double> errors(dataset.size());
#pragma omp parallel for
    for (std::size_t p = 0; p < dataset.size(); ++p)
        errors[p] = pattern_error(net, dataset[p].input, dataset[p].target);
    double total = 0.0;
    for (double e : errors)
        total += e;
    return total;
}

}  // namespace letterfeat
