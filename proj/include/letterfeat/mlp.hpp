#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "letterfeat/rng.hpp"

namespace letterfeat {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& values() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Logistic transfer 1 / (1 + exp(-alpha * x)), evaluated without overflow for any finite x.
double sigmoid(double x, double alpha = 1.0);

/// d/dx sigmoid expressed through the unit's output s: alpha * s * (1 - s).
inline double sigmoid_slope(double s, double alpha) { return alpha * s * (1.0 - s); }

/// Single-hidden-layer sigmoid network: inputs -> hidden -> outputs.
///
/// w1 is hidden x inputs, w2 is outputs x hidden. The same slope alpha is used
/// by the hidden and output layers.
struct Mlp {
    std::size_t input_count = 0;
    std::size_t hidden_count = 0;
    std::size_t output_count = 0;
    Matrix w1;
    std::vector<double> b1;
    Matrix w2;
    std::vector<double> b2;
    double alpha = 1.0;

    /// All-zero network of the given shape.
    static Mlp zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs, double alpha = 1.0);

    std::size_t parameter_count() const noexcept
    {
        return hidden_count * (input_count + 1) + output_count * (hidden_count + 1);
    }

    /// Throws std::invalid_argument if shapes disagree, alpha <= 0, or any value is non-finite.
    void validate() const;

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

/// Uniform [-0.5, 0.5] initialization. Draw order: w1 row-major, b1, w2 row-major, b2.
Mlp init_random(std::size_t hidden_count, std::size_t output_count, Rng& rng,
                std::size_t input_count = 81, double alpha = 1.0);

struct ForwardTrace {
    std::vector<double> input;
    std::vector<double> hidden_net;
    std::vector<double> hidden_act;
    std::vector<double> output_net;
    std::vector<double> output_act;
};

/// Full forward pass; throws std::invalid_argument on input length mismatch.
ForwardTrace forward(const Mlp& net, std::span<const double> input);

/// Output activations only, without building a trace.
void forward_outputs(const Mlp& net, std::span<const double> input, std::span<double> hidden_scratch,
                     std::span<double> outputs);

/// Text weight file: `inputs hidden outputs alpha`, then w1 rows, b1, w2 rows,
/// b2, one row per line. Numbers use the shortest round-trip representation.
std::string save_weights(const Mlp& net);
Mlp load_weights(std::istream& in);
Mlp load_weights_text(const std::string& text);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace letterfeat
