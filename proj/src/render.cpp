#include "letterfeat/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace letterfeat {

namespace {

const Rgb kWhite{255, 255, 255};

std::uint8_t lerp_channel(std::uint8_t lo, std::uint8_t hi, double t)
{
    const double v = static_cast<double>(lo) + t * (static_cast<double>(hi) - static_cast<double>(lo));
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

void append_header(Bytes& out, std::size_t width, std::size_t height)
{
    const std::string header = "P6\n" + std::to_string(width) + ' ' + std::to_string(height) + "\n255\n";
    out.insert(out.end(), header.begin(), header.end());
}

void check_cell_size(std::size_t cell_size)
{
    if (cell_size == 0)
        throw std::invalid_argument("cell size must be at least 1");
}

// Colors of one normalized map, one per cell.
std::array<std::array<Rgb, kGridSide>, kGridSide> cell_colors(const Heatmap9x9& map, const Palette& palette)
{
    const Grid9x9 t = normalize(map);
    std::array<std::array<Rgb, kGridSide>, kGridSide> colors{};
    for (std::size_t r = 0; r < kGridSide; ++r)
        for (std::size_t c = 0; c < kGridSide; ++c)
            colors[r][c] = interpolate(palette, t[r][c]);
    return colors;
}

}  // namespace

const Palette& yellow_red_palette()
{
    static const Palette palette{{255, 255, 0}, {255, 0, 0}, "yellow-red"};
    return palette;
}

Grid9x9 normalize(const Heatmap9x9& map)
{
    double lo = map.values[0][0];
    double hi = lo;
    for (const auto& row : map.values)
        for (double v : row) {
            if (!std::isfinite(v))
                throw std::invalid_argument("heatmap contains a non-finite value");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    Grid9x9 out{};
    for (std::size_t r = 0; r < kGridSide; ++r)
        for (std::size_t c = 0; c < kGridSide; ++c)
            out[r][c] = hi == lo ? 0.5 : (map.values[r][c] - lo) / (hi - lo);
    return out;
}

Rgb interpolate(const Palette& palette, double t)
{
    return {lerp_channel(palette.low.r, palette.high.r, t), lerp_channel(palette.low.g, palette.high.g, t),
            lerp_channel(palette.low.b, palette.high.b, t)};
}

Bytes render_ppm(const Heatmap9x9& map, const Palette& palette, std::size_t cell_size)
{
    return render_montage(std::span<const Heatmap9x9>(&map, 1), palette, cell_size, 0);
}

Bytes render_montage(std::span<const Heatmap9x9> maps, const Palette& palette, std::size_t cell_size,
                     std::size_t gap)
{
    check_cell_size(cell_size);
    if (maps.empty())
        throw std::invalid_argument("montage needs at least one heatmap");

    const std::size_t panel = kGridSide * cell_size;
    const std::size_t width = maps.size() * panel + (maps.size() - 1) * gap;
    const std::size_t height = panel;

    std::vector<std::array<std::array<Rgb, kGridSide>, kGridSide>> colors(maps.size());
    for (std::size_t m = 0; m < maps.size(); ++m)
        colors[m] = cell_colors(maps[m], palette);

    Bytes out;
    append_header(out, width, height);
    out.reserve(out.size() + width * height * 3);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const std::size_t m = x / (panel + gap);
            const std::size_t local = x % (panel + gap);
            const Rgb px = local < panel ? colors[m][y / cell_size][local / cell_size] : kWhite;
            out.push_back(px.r);
            out.push_back(px.g);
            out.push_back(px.b);
        }
    }
    return out;
}

PpmImage parse_ppm(std::span<const std::uint8_t> bytes)
{
    std::size_t pos = 0;
    auto read_token = [&]() {
        std::string tok;
        while (pos < bytes.size() && bytes[pos] != ' ' && bytes[pos] != '\n')
            tok += static_cast<char>(bytes[pos++]);
        if (pos >= bytes.size() || tok.empty())
            throw std::invalid_argument("ppm: truncated header");
        ++pos;  // single separator
        return tok;
    };
    auto read_number = [&]() {
        const std::string tok = read_token();
        if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
            throw std::invalid_argument("ppm: bad header number " + tok);
        return static_cast<std::size_t>(std::stoul(tok));
    };

    if (read_token() != "P6")
        throw std::invalid_argument("ppm: magic is not P6");
    PpmImage img;
    img.width = read_number();
    img.height = read_number();
    if (read_number() != 255)
        throw std::invalid_argument("ppm: maxval must be 255");
    if (bytes.size() - pos != img.width * img.height * 3)
        throw std::invalid_argument("ppm: payload size does not match header");
    img.pixels.resize(img.width * img.height);
    for (auto& px : img.pixels) {
        px = {bytes[pos], bytes[pos + 1], bytes[pos + 2]};
        pos += 3;
    }
    return img;
}

}  // namespace letterfeat
