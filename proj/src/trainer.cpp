#include "letterfeat/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace letterfeat {

namespace {

void check_pattern(const Mlp& net, std::size_t input_size, std::size_t target_size)
{
    if (input_size != net.input_count)
        throw std::invalid_argument("input has " + std::to_string(input_size) + " values, network expects "
                                    + std::to_string(net.input_count));
    if (target_size != net.output_count)
        throw std::invalid_argument("target has " + std::to_string(target_size) + " values, network has "
                                    + std::to_string(net.output_count) + " outputs");
}

void check_dataset(const Mlp& net, const Dataset& dataset)
{
    if (dataset.empty())
        throw std::invalid_argument("dataset is empty");
    for (const Pattern& p : dataset)
        check_pattern(net, p.input.size(), p.target.size());
}

void apply_update(Mlp& net, const Gradients& g, double eta)
{
    auto& w1 = net.w1.values();
    for (std::size_t i = 0; i < w1.size(); ++i)
        w1[i] -= eta * g.w1.values()[i];
    for (std::size_t j = 0; j < net.b1.size(); ++j)
        net.b1[j] -= eta * g.b1[j];
    auto& w2 = net.w2.values();
    for (std::size_t i = 0; i < w2.size(); ++i)
        w2[i] -= eta * g.w2.values()[i];
    for (std::size_t k = 0; k < net.b2.size(); ++k)
        net.b2[k] -= eta * g.b2[k];
}

// Pattern error evaluated in extended precision. The finite-difference oracle
// divides a difference of two nearly equal errors by 2h, so double rounding in
// the error (about 1e-16 * E) would dominate gradients smaller than ~1e-5.
long double pattern_error_extended(const Mlp& net, std::span<const double> input, std::span<const double> target)
{
    const long double alpha = net.alpha;
    auto logistic = [alpha](long double x) { return 1.0L / (1.0L + std::exp(-alpha * x)); };
    std::vector<long double> hidden(net.hidden_count);
    for (std::size_t j = 0; j < net.hidden_count; ++j) {
        long double s = net.b1[j];
        for (std::size_t i = 0; i < net.input_count; ++i)
            s += static_cast<long double>(net.w1(j, i)) * input[i];
        hidden[j] = logistic(s);
    }
    long double e = 0.0L;
    for (std::size_t k = 0; k < net.output_count; ++k) {
        long double s = net.b2[k];
        for (std::size_t j = 0; j < net.hidden_count; ++j)
            s += static_cast<long double>(net.w2(k, j)) * hidden[j];
        const long double d = static_cast<long double>(target[k]) - logistic(s);
        e += d * d;
    }
    return e;
}

}  // namespace

void TrainConfig::validate() const
{
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("eta must be positive");
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("epsilon must be non-negative");
    if (max_epochs < 1)
        throw std::invalid_argument("max_epochs must be at least 1");
    if (!(noise_rate >= 0.0 && noise_rate <= 1.0))
        throw std::invalid_argument("noise rate must be in [0, 1]");
}

Gradients Gradients::zeros_like(const Mlp& net)
{
    return {Matrix(net.hidden_count, net.input_count), std::vector<double>(net.hidden_count, 0.0),
            Matrix(net.output_count, net.hidden_count), std::vector<double>(net.output_count, 0.0)};
}

std::vector<double> Gradients::flat() const
{
    std::vector<double> out;
    out.reserve(w1.values().size() + b1.size() + w2.values().size() + b2.size());
    out.insert(out.end(), w1.values().begin(), w1.values().end());
    out.insert(out.end(), b1.begin(), b1.end());
    out.insert(out.end(), w2.values().begin(), w2.values().end());
    out.insert(out.end(), b2.begin(), b2.end());
    return out;
}

double pattern_error(const Mlp& net, std::span<const double> input, std::span<const double> target)
{
    check_pattern(net, input.size(), target.size());
    const ForwardTrace t = forward(net, input);
    double e = 0.0;
    for (std::size_t k = 0; k < net.output_count; ++k) {
        const double d = target[k] - t.output_act[k];
        e += d * d;
    }
    return e;
}

double sse(const Mlp& net, const Dataset& dataset)
{
    check_dataset(net, dataset);
    double total = 0.0;
    for (const Pattern& p : dataset)
        total += pattern_error(net, p.input, p.target);
    return total;
}

Gradients backprop_gradients(const Mlp& net, std::span<const double> input, std::span<const double> target,
                             SlopeFn slope)
{
    check_pattern(net, input.size(), target.size());
    const ForwardTrace t = forward(net, input);
    Gradients g = Gradients::zeros_like(net);

    // dE/dnet_k for E = sum_k (t_k - o_k)^2
    std::vector<double> out_delta(net.output_count);
    for (std::size_t k = 0; k < net.output_count; ++k) {
        const double o = t.output_act[k];
        out_delta[k] = -2.0 * (target[k] - o) * slope(o, net.alpha);
        g.b2[k] = out_delta[k];
        for (std::size_t j = 0; j < net.hidden_count; ++j)
            g.w2(k, j) = out_delta[k] * t.hidden_act[j];
    }

    for (std::size_t j = 0; j < net.hidden_count; ++j) {
        double back = 0.0;
        for (std::size_t k = 0; k < net.output_count; ++k)
            back += net.w2(k, j) * out_delta[k];
        const double delta = back * slope(t.hidden_act[j], net.alpha);
        g.b1[j] = delta;
        auto row = g.w1.row(j);
        for (std::size_t i = 0; i < net.input_count; ++i)
            row[i] = delta * input[i];
    }
    return g;
}

Gradients finite_diff_gradients(const Mlp& net, std::span<const double> input, std::span<const double> target,
                                double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("finite difference step must be positive");
    check_pattern(net, input.size(), target.size());

    Mlp probe = net;
    std::vector<double> estimates;
    estimates.reserve(net.parameter_count());
    for_each_parameter(probe, [&](double& p) {
        const double saved = p;
        p = saved + step;
        const double hi = p;
        const long double up = pattern_error_extended(probe, input, target);
        p = saved - step;
        const double lo = p;
        const long double down = pattern_error_extended(probe, input, target);
        p = saved;
        // Divide by the step actually taken after rounding p +/- h to double.
        estimates.push_back(static_cast<double>((up - down) / (static_cast<long double>(hi) - lo)));
    });

    Gradients g = Gradients::zeros_like(net);
    auto it = estimates.begin();
    for (double& v : g.w1.values()) v = *it++;
    for (double& v : g.b1) v = *it++;
    for (double& v : g.w2.values()) v = *it++;
    for (double& v : g.b2) v = *it++;
    return g;
}

GradientComparison compare_gradients(const Gradients& analytic, const Gradients& reference, double abs_floor)
{
    const std::vector<double> a = analytic.flat();
    const std::vector<double> r = reference.flat();
    if (a.size() != r.size())
        throw std::invalid_argument("compare_gradients: shape mismatch");
    GradientComparison cmp;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = std::abs(a[i] - r[i]);
        if (std::abs(r[i]) < abs_floor) {
            cmp.max_absolute_error = std::max(cmp.max_absolute_error, diff);
        } else {
            const double scale = std::max(std::abs(a[i]), std::abs(r[i]));
            cmp.max_relative_error = std::max(cmp.max_relative_error, diff / scale);
        }
    }
    return cmp;
}

TrainReport train(Mlp& net, const Dataset& dataset, const TrainConfig& config, Rng& rng)
{
    config.validate();
    net.validate();
    check_dataset(net, dataset);

    TrainReport report;
    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;

    for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        if (config.shuffle)
            for (std::size_t i = order.size() - 1; i > 0; --i)
                std::swap(order[i], order[rng.below(i + 1)]);

        for (std::size_t idx : order) {
            const Pattern& p = dataset[idx];
            if (config.noise_rate > 0.0) {
                const InputVector noisy = apply_noise(p.input, config.noise_rate, rng);
                apply_update(net, backprop_gradients(net, noisy, p.target), config.eta);
            } else {
                apply_update(net, backprop_gradients(net, p.input, p.target), config.eta);
            }
        }

        const double e = sse(net, dataset);
        report.sse_curve.push_back(e);
        if (e <= config.epsilon) {
            report.converged = true;
            break;
        }
    }
    report.epochs_run = report.sse_curve.size();
    report.final_sse = report.sse_curve.back();
    report.final_accuracy = accuracy(net, dataset);
    return report;
}

std::size_t argmax(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("argmax of empty range");
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[best])
            best = k;
    return best;
}

std::size_t classify(const Mlp& net, std::span<const double> input)
{
    return argmax(forward(net, input).output_act);
}

double accuracy(const Mlp& net, const Dataset& dataset)
{
    check_dataset(net, dataset);
    std::size_t hits = 0;
    for (const Pattern& p : dataset)
        if (classify(net, p.input) == hot_index(p.target))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

std::string format_sse_curve(const TrainReport& report)
{
    std::string out = "epoch sse\n";
    for (std::size_t e = 0; e < report.sse_curve.size(); ++e)
        out += std::to_string(e + 1) + ' ' + format_double(report.sse_curve[e]) + '\n';
    return out;
}

}  // namespace letterfeat
