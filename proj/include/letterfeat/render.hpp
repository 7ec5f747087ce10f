#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "letterfeat/analysis.hpp"

namespace letterfeat {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Two-color linear palette; t = 0 maps to low, t = 1 to high.
struct Palette {
    Rgb low;
    Rgb high;
    std::string name;
};

/// Yellow (255,255,0) for low values, red (255,0,0) for high values.
const Palette& yellow_red_palette();

/// Per-map min-max scaling to [0, 1]; a constant map becomes all 0.5.
Grid9x9 normalize(const Heatmap9x9& map);

/// Per-channel linear interpolation, rounded half-up.
Rgb interpolate(const Palette& palette, double t);

using Bytes = std::vector<std::uint8_t>;

/// Binary PPM (P6, maxval 255) of side 9 * cell_size.
Bytes render_ppm(const Heatmap9x9& map, const Palette& palette, std::size_t cell_size);

/// Maps side by side, separated by `gap` white columns, each normalized on its own.
Bytes render_montage(std::span<const Heatmap9x9> maps, const Palette& palette, std::size_t cell_size,
                     std::size_t gap);

struct PpmImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;  // row-major

    const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Strict reader for the subset render_ppm writes; throws std::invalid_argument.
PpmImage parse_ppm(std::span<const std::uint8_t> bytes);

}  // namespace letterfeat
