#include "letterfeat/kernels.hpp"

#include <algorithm>

#include "letterfeat/glyphs.hpp"

namespace letterfeat {

double GradCheckReport::max_relative_error() const
{
    double m = 0.0;
    for (const auto& s : scales)
        m = std::max(m, s.max_relative_error);
    return m;
}

double GradCheckReport::max_absolute_error() const
{
    double m = 0.0;
    for (const auto& s : scales)
        m = std::max(m, s.max_absolute_error);
    return m;
}

bool GradCheckReport::passed() const
{
    return max_relative_error() <= rel_tol && max_absolute_error() <= abs_tol;
}

GradientComparison gradient_check_instance(const NetworkShape& shape, std::uint64_t seed, double step,
                                           SlopeFn slope)
{
    Rng rng(seed);
    Mlp net = init_random(shape.hidden, shape.outputs, rng, shape.inputs);
    // Wider than the training init so both saturated and linear regimes show up.
    for_each_parameter(net, [&](double& p) { p *= 2.0; });

    InputVector input(shape.inputs);
    TargetVector target(shape.outputs);
    if (shape.inputs == kInputCount) {
        input = flatten(builtin_alphabet()[rng.below(kLetterCount)]);
        target = one_hot(rng.below(shape.outputs), shape.outputs);
    } else {
        for (double& x : input)
            x = rng.uniform(-1.0, 1.0);
        for (double& t : target)
            t = rng.uniform01();
    }

    const Gradients analytic = backprop_gradients(net, input, target, slope);
    const Gradients numeric = finite_diff_gradients(net, input, target, step);
    return compare_gradients(analytic, numeric);
}

GradCheckReport gradient_check_sweep_serial(const GradCheckOptions& options)
{
    GradCheckReport report;
    const NetworkShape shapes[] = {kTinyShape, kGlyphShape};
    for (std::size_t s = 0; s < 2; ++s) {
        GradCheckScale scale{shapes[s], options.instances, 0.0, 0.0};
        for (std::size_t i = 0; i < options.instances; ++i) {
            const auto cmp = gradient_check_instance(
                shapes[s], derive_seed(options.seed, s * options.instances + i), options.step, options.slope);
            scale.max_relative_error = std::max(scale.max_relative_error, cmp.max_relative_error);
            scale.max_absolute_error = std::max(scale.max_absolute_error, cmp.max_absolute_error);
        }
        report.scales.push_back(scale);
    }
    return report;
}

SeedOutcome train_one_seed(std::uint64_t seed, const Dataset& dataset, std::size_t hidden_count,
                           const TrainConfig& config)
{
    Rng init_rng(derive_seed(seed, 0));
    Mlp net = init_random(hidden_count, dataset.front().target.size(), init_rng, dataset.front().input.size());
    Rng train_rng(derive_seed(seed, 1));
    TrainConfig c = config;
    c.seed = seed;
    return {seed, train(net, dataset, c, train_rng)};
}

std::vector<SeedOutcome> train_seeds_serial(std::span<const std::uint64_t> seeds, const Dataset& dataset,
                                            std::size_t hidden_count, const TrainConfig& config)
{
    std::vector<SeedOutcome> out;
    out.reserve(seeds.size());
    for (std::uint64_t seed : seeds)
        out.push_back(train_one_seed(seed, dataset, hidden_count, config));
    return out;
}

Matrix hidden_activations_serial(const Mlp& net, std::span<const InputVector> inputs)
{
    Matrix acts(inputs.size(), net.hidden_count);
    for (std::size_t p = 0; p < inputs.size(); ++p) {
        const ForwardTrace t = forward(net, inputs[p]);
        std::copy(t.hidden_act.begin(), t.hidden_act.end(), acts.row(p).begin());
    }
    return acts;
}

double batch_sse_serial(const Mlp& net, const Dataset& dataset)
{
    double total = 0.0;
    for (const Pattern& p : dataset)
        total += pattern_error(net, p.input, p.target);
    return total;
}

}  // namespace letterfeat
