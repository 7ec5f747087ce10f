#include "letterfeat/mlp.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace letterfeat {

namespace {

bool all_finite(const std::vector<double>& v)
{
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

void append_row(std::string& out, std::span<const double> row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out += ' ';
        out += format_double(row[i]);
    }
    out += '\n';
}

std::vector<double> read_row(std::istream& in, std::size_t expected, const char* what)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(std::string("weights: missing ") + what);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || end != token.data() + token.size())
            throw std::invalid_argument(std::string("weights: bad number in ") + what + ": " + token);
        row.push_back(v);
    }
    if (row.size() != expected)
        throw std::invalid_argument(std::string("weights: ") + what + " has " + std::to_string(row.size())
                                    + " values, expected " + std::to_string(expected));
    return row;
}

}  // namespace

double sigmoid(double x, double alpha)
{
    const double z = alpha * x;
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

Mlp Mlp::zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs, double alpha)
{
    Mlp net;
    net.input_count = inputs;
    net.hidden_count = hidden;
    net.output_count = outputs;
    net.w1 = Matrix(hidden, inputs);
    net.b1.assign(hidden, 0.0);
    net.w2 = Matrix(outputs, hidden);
    net.b2.assign(outputs, 0.0);
    net.alpha = alpha;
    return net;
}

void Mlp::validate() const
{
    if (input_count == 0 || hidden_count == 0 || output_count == 0)
        throw std::invalid_argument("network layer sizes must be positive");
    if (w1.rows() != hidden_count || w1.cols() != input_count || b1.size() != hidden_count
        || w2.rows() != output_count || w2.cols() != hidden_count || b2.size() != output_count)
        throw std::invalid_argument("network parameter shapes are inconsistent");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("sigmoid alpha must be positive and finite");
    if (!all_finite(w1.values()) || !all_finite(b1) || !all_finite(w2.values()) || !all_finite(b2))
        throw std::invalid_argument("network contains non-finite parameters");
}

Mlp init_random(std::size_t hidden_count, std::size_t output_count, Rng& rng, std::size_t input_count,
                double alpha)
{
    if (hidden_count == 0 || output_count == 0 || input_count == 0)
        throw std::invalid_argument("init_random: layer sizes must be positive");
    Mlp net = Mlp::zeros(input_count, hidden_count, output_count, alpha);
    for (double& w : net.w1.values())
        w = rng.uniform(-0.5, 0.5);
    for (double& b : net.b1)
        b = rng.uniform(-0.5, 0.5);
    for (double& w : net.w2.values())
        w = rng.uniform(-0.5, 0.5);
    for (double& b : net.b2)
        b = rng.uniform(-0.5, 0.5);
    return net;
}

void forward_outputs(const Mlp& net, std::span<const double> input, std::span<double> hidden,
                     std::span<double> outputs)
{
    for (std::size_t j = 0; j < net.hidden_count; ++j) {
        const auto w = net.w1.row(j);
        double s = net.b1[j];
        for (std::size_t i = 0; i < net.input_count; ++i)
            s += w[i] * input[i];
        hidden[j] = sigmoid(s, net.alpha);
    }
    for (std::size_t k = 0; k < net.output_count; ++k) {
        const auto w = net.w2.row(k);
        double s = net.b2[k];
        for (std::size_t j = 0; j < net.hidden_count; ++j)
            s += w[j] * hidden[j];
        outputs[k] = sigmoid(s, net.alpha);
    }
}

ForwardTrace forward(const Mlp& net, std::span<const double> input)
{
    if (input.size() != net.input_count)
        throw std::invalid_argument("forward: input has " + std::to_string(input.size()) + " values, network expects "
                                    + std::to_string(net.input_count));
    ForwardTrace t;
    t.input.assign(input.begin(), input.end());
    t.hidden_net.resize(net.hidden_count);
    t.hidden_act.resize(net.hidden_count);
    t.output_net.resize(net.output_count);
    t.output_act.resize(net.output_count);

    for (std::size_t j = 0; j < net.hidden_count; ++j) {
        const auto w = net.w1.row(j);
        double s = net.b1[j];
        for (std::size_t i = 0; i < net.input_count; ++i)
            s += w[i] * input[i];
        t.hidden_net[j] = s;
        t.hidden_act[j] = sigmoid(s, net.alpha);
    }
    for (std::size_t k = 0; k < net.output_count; ++k) {
        const auto w = net.w2.row(k);
        double s = net.b2[k];
        for (std::size_t j = 0; j < net.hidden_count; ++j)
            s += w[j] * t.hidden_act[j];
        t.output_net[k] = s;
        t.output_act[k] = sigmoid(s, net.alpha);
    }
    return t;
}

std::string format_double(double value)
{
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

std::string save_weights(const Mlp& net)
{
    net.validate();
    std::string out = std::to_string(net.input_count) + ' ' + std::to_string(net.hidden_count) + ' '
                      + std::to_string(net.output_count) + ' ' + format_double(net.alpha) + '\n';
    for (std::size_t j = 0; j < net.hidden_count; ++j)
        append_row(out, net.w1.row(j));
    append_row(out, net.b1);
    for (std::size_t k = 0; k < net.output_count; ++k)
        append_row(out, net.w2.row(k));
    append_row(out, net.b2);
    return out;
}

Mlp load_weights(std::istream& in)
{
    const std::vector<double> header = read_row(in, 4, "header");
    for (int i = 0; i < 3; ++i)
        if (header[i] < 1.0 || header[i] != std::floor(header[i]) || header[i] > 1e6)
            throw std::invalid_argument("weights: layer sizes must be positive integers");
    Mlp net = Mlp::zeros(static_cast<std::size_t>(header[0]), static_cast<std::size_t>(header[1]),
                         static_cast<std::size_t>(header[2]), header[3]);
    for (std::size_t j = 0; j < net.hidden_count; ++j) {
        const auto row = read_row(in, net.input_count, "w1 row");
        std::copy(row.begin(), row.end(), net.w1.row(j).begin());
    }
    net.b1 = read_row(in, net.hidden_count, "b1");
    for (std::size_t k = 0; k < net.output_count; ++k) {
        const auto row = read_row(in, net.hidden_count, "w2 row");
        std::copy(row.begin(), row.end(), net.w2.row(k).begin());
    }
    net.b2 = read_row(in, net.output_count, "b2");
    net.validate();
    return net;
}

Mlp load_weights_text(const std::string& text)
{
    std::istringstream in(text);
    return load_weights(in);
}

}  // namespace letterfeat
