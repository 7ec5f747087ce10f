#include "letterfeat/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "letterfeat/kernels.hpp"

namespace letterfeat {

namespace {

void check_node(const Mlp& net, std::size_t node)
{
    if (node >= net.hidden_count)
        throw std::invalid_argument("hidden node " + std::to_string(node) + " out of range (network has "
                                    + std::to_string(net.hidden_count) + ")");
    if (net.input_count != kInputCount)
        throw std::invalid_argument("heatmaps need an 81-input network");
}

std::string fixed4(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

Grid9x9 reshape(std::span<const double> values)
{
    if (values.size() != kInputCount)
        throw std::invalid_argument("reshape: expected 81 values");
    Grid9x9 grid{};
    for (std::size_t i = 0; i < kInputCount; ++i)
        grid[i / kGridSide][i % kGridSide] = values[i];
    return grid;
}

Heatmap9x9 weight_heatmap(const Mlp& net, std::size_t node)
{
    check_node(net, node);
    Heatmap9x9 map;
    map.values = reshape(net.w1.row(node));
    map.node_index = node;
    return map;
}

Heatmap9x9 letter_overlay_heatmap(const Mlp& net, std::size_t node, const Glyph& glyph)
{
    Heatmap9x9 map = weight_heatmap(net, node);
    for (std::size_t r = 0; r < kGridSide; ++r)
        for (std::size_t c = 0; c < kGridSide; ++c)
            map.values[r][c] *= glyph.pixels[r][c] ? 1.0 : 0.0;
    map.letter = glyph.letter;
    return map;
}

std::span<const double> ActivationTable::row(char letter) const
{
    const auto it = std::find(letters.begin(), letters.end(), letter);
    if (it == letters.end())
        throw std::invalid_argument(std::string("activation table has no row for ") + letter);
    return activations.row(static_cast<std::size_t>(it - letters.begin()));
}

ActivationTable activation_table(const Mlp& net, const std::vector<Glyph>& glyphs)
{
    if (net.input_count != kInputCount)
        throw std::invalid_argument("activation_table needs an 81-input network");
    std::vector<std::size_t> order(glyphs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return glyphs[a].letter < glyphs[b].letter; });

    ActivationTable table;
    std::vector<InputVector> inputs;
    for (std::size_t i : order) {
        table.letters.push_back(glyphs[i].letter);
        inputs.push_back(flatten(glyphs[i]));
    }
    table.activations = hidden_activations_omp(net, inputs);
    return table;
}

std::vector<char> strongly_activating_letters(const ActivationTable& table, std::size_t node, double threshold)
{
    if (node >= table.node_count())
        throw std::invalid_argument("hidden node " + std::to_string(node) + " out of range");
    std::vector<char> out;
    for (std::size_t r = 0; r < table.letters.size(); ++r)
        if (table.activations(r, node) > threshold)
            out.push_back(table.letters[r]);
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_activation_table(const ActivationTable& table)
{
    std::string out = "letter";
    for (std::size_t j = 0; j < table.node_count(); ++j) {
        char buf[16];
        std::snprintf(buf, sizeof buf, " %7s", ("node" + std::to_string(j + 1)).c_str());
        out += buf;
    }
    out += '\n';
    for (std::size_t r = 0; r < table.letters.size(); ++r) {
        out += "     ";
        out += table.letters[r];
        for (std::size_t j = 0; j < table.node_count(); ++j) {
            out += "  ";
            out += fixed4(table.activations(r, j));
        }
        out += '\n';
    }
    return out;
}

std::string format_strong_letters(const ActivationTable& table, double threshold)
{
    std::string out = "threshold " + fixed4(threshold) + '\n';
    for (std::size_t j = 0; j < table.node_count(); ++j) {
        out += "node " + std::to_string(j + 1) + ':';
        const auto letters = strongly_activating_letters(table, j, threshold);
        for (std::size_t i = 0; i < letters.size(); ++i) {
            out += i == 0 ? " " : ", ";
            out += letters[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace letterfeat
