#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "letterfeat/glyphs.hpp"
#include "letterfeat/mlp.hpp"

namespace letterfeat {

using Grid9x9 = std::array<std::array<double, kGridSide>, kGridSide>;

struct Heatmap9x9 {
    Grid9x9 values{};
    std::size_t node_index = 0;
    std::optional<char> letter;
    std::string tag;
};

/// Row-major reshape of 81 values; inverse of flatten.
Grid9x9 reshape(std::span<const double> values);

/// The node's 81 input weights as a 9x9 grid.
Heatmap9x9 weight_heatmap(const Mlp& net, std::size_t node);

/// Node weights masked by the glyph's on-pixels (elementwise product).
Heatmap9x9 letter_overlay_heatmap(const Mlp& net, std::size_t node, const Glyph& glyph);

/// Hidden activations per letter, rows sorted by letter.
struct ActivationTable {
    std::vector<char> letters;
    Matrix activations;  // letters.size() x hidden_count

    std::size_t node_count() const noexcept { return activations.cols(); }
    std::span<const double> row(char letter) const;
};

ActivationTable activation_table(const Mlp& net, const std::vector<Glyph>& glyphs);

/// Letters whose activation at `node` is strictly greater than `threshold`, A..Z order.
std::vector<char> strongly_activating_letters(const ActivationTable& table, std::size_t node, double threshold = 0.5);

/// Letters as rows, nodes as columns, 4 decimals.
std::string format_activation_table(const ActivationTable& table);

/// One line per node (1-based): `node 1: A, B, E`.
std::string format_strong_letters(const ActivationTable& table, double threshold = 0.5);

}  // namespace letterfeat
