#include "letterfeat/glyphs.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace letterfeat {

namespace {

// Dataset of record. Every glyph touches rows 0 and 8 and columns 0 and 8.
constexpr std::array<std::string_view, kLetterCount * kGridSide> kFontRows = {
    // A
    "....#....", "...#.#...", "..#...#..", ".#.....#.", "#.......#",
    "#########", "#.......#", "#.......#", "#.......#",
    // B
    "########.", "#.......#", "#.......#", "#.......#", "########.",
    "#.......#", "#.......#", "#.......#", "########.",
    // C
    ".#######.", "#.......#", "#........", "#........", "#........",
    "#........", "#........", "#.......#", ".#######.",
    // D
    "#######..", "#......#.", "#.......#", "#.......#", "#.......#",
    "#.......#", "#.......#", "#......#.", "#######..",
    // E
    "#########", "#........", "#........", "#........", "#######..",
    "#........", "#........", "#........", "#########",
    // F
    "#########", "#........", "#........", "#........", "#######..",
    "#........", "#........", "#........", "#........",
    // G
    ".#######.", "#.......#", "#........", "#........", "#...#####",
    "#.......#", "#.......#", "#.......#", ".#######.",
    // H
    "#.......#", "#.......#", "#.......#", "#.......#", "#########",
    "#.......#", "#.......#", "#.......#", "#.......#",
    // I
    "#########", "....#....", "....#....", "....#....", "....#....",
    "....#....", "....#....", "....#....", "#########",
    // J
    "#########", "......#..", "......#..", "......#..", "......#..",
    "......#..", "#.....#..", "#.....#..", ".#####...",
    // K
    "#.......#", "#......#.", "#.....#..", "#....#...", "#####....",
    "#....#...", "#.....#..", "#......#.", "#.......#",
    // L
    "#........", "#........", "#........", "#........", "#........",
    "#........", "#........", "#........", "#########",
    // M
    "#.......#", "##.....##", "#.#...#.#", "#..#.#..#", "#...#...#",
    "#.......#", "#.......#", "#.......#", "#.......#",
    // N
    "#.......#", "##......#", "#.#.....#", "#..#....#", "#...#...#",
    "#....#..#", "#.....#.#", "#......##", "#.......#",
    // O
    ".#######.", "#.......#", "#.......#", "#.......#", "#.......#",
    "#.......#", "#.......#", "#.......#", ".#######.",
    // P
    "########.", "#.......#", "#.......#", "#.......#", "########.",
    "#........", "#........", "#........", "#........",
    // Q
    ".#######.", "#.......#", "#.......#", "#.......#", "#.......#",
    "#.......#", "#.....#.#", "#......#.", ".######.#",
    // R
    "########.", "#.......#", "#.......#", "#.......#", "########.",
    "#..#.....", "#....#...", "#......#.", "#.......#",
    // S
    ".########", "#........", "#........", "#........", ".#######.",
    "........#", "........#", "........#", "########.",
    // T
    "#########", "....#....", "....#....", "....#....", "....#....",
    "....#....", "....#....", "....#....", "....#....",
    // U
    "#.......#", "#.......#", "#.......#", "#.......#", "#.......#",
    "#.......#", "#.......#", "#.......#", ".#######.",
    // V
    "#.......#", "#.......#", ".#.....#.", ".#.....#.", "..#...#..",
    "..#...#..", "...#.#...", "...#.#...", "....#....",
    // W
    "#.......#", "#.......#", "#.......#", "#.......#", "#...#...#",
    "#...#...#", "#..#.#..#", "#.#...#.#", ".#.....#.",
    // X
    "#.......#", ".#.....#.", "..#...#..", "...#.#...", "....#....",
    "...#.#...", "..#...#..", ".#.....#.", "#.......#",
    // Y
    "#.......#", ".#.....#.", "..#...#..", "...#.#...", "....#....",
    "....#....", "....#....", "....#....", "....#....",
    // Z
    "#########", ".......#.", "......#..", ".....#...", "....#....",
    "...#.....", "..#......", ".#.......", "#########",
};

bool is_upper_letter(char c) { return c >= 'A' && c <= 'Z'; }

std::vector<Glyph> make_builtin()
{
    std::vector<Glyph> glyphs(kLetterCount);
    for (std::size_t g = 0; g < kLetterCount; ++g) {
        glyphs[g].letter = static_cast<char>('A' + g);
        for (std::size_t r = 0; r < kGridSide; ++r) {
            const std::string_view row = kFontRows[g * kGridSide + r];
            for (std::size_t c = 0; c < kGridSide; ++c)
                glyphs[g].pixels[r][c] = row[c] == '#' ? 1 : 0;
        }
    }
    return glyphs;
}

std::string strip_cr(std::string line)
{
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

}  // namespace

FontParseError::FontParseError(std::size_t line, const std::string& reason)
    : std::runtime_error("font line " + std::to_string(line) + ": " + reason), line_(line)
{
}

std::string glyph_violation(const Glyph& glyph)
{
    if (!is_upper_letter(glyph.letter))
        return "letter must be A-Z";
    bool top = false, bottom = false, left = false, right = false;
    for (std::size_t r = 0; r < kGridSide; ++r) {
        for (std::size_t c = 0; c < kGridSide; ++c) {
            const unsigned char p = glyph.pixels[r][c];
            if (p > 1)
                return "pixel values must be 0 or 1";
            if (p == 0)
                continue;
            top |= r == 0;
            bottom |= r == kGridSide - 1;
            left |= c == 0;
            right |= c == kGridSide - 1;
        }
    }
    if (!(top && bottom && left && right))
        return "missing extent: glyph must touch all four borders";
    return {};
}

const std::vector<Glyph>& builtin_alphabet()
{
    static const std::vector<Glyph> glyphs = make_builtin();
    return glyphs;
}

const Glyph& builtin_glyph(char letter)
{
    if (!is_upper_letter(letter))
        throw std::invalid_argument(std::string("not an uppercase letter: ") + letter);
    return builtin_alphabet()[static_cast<std::size_t>(letter - 'A')];
}

InputVector flatten(const PixelGrid& grid)
{
    InputVector out(kInputCount);
    for (std::size_t r = 0; r < kGridSide; ++r)
        for (std::size_t c = 0; c < kGridSide; ++c)
            out[kGridSide * r + c] = grid[r][c] ? 1.0 : 0.0;
    return out;
}

InputVector flatten(const Glyph& glyph) { return flatten(glyph.pixels); }

PixelGrid unflatten(const InputVector& values)
{
    if (values.size() != kInputCount)
        throw std::invalid_argument("unflatten: expected 81 values, got " + std::to_string(values.size()));
    PixelGrid grid{};
    for (std::size_t i = 0; i < kInputCount; ++i) {
        if (values[i] != 0.0 && values[i] != 1.0)
            throw std::invalid_argument("unflatten: value at index " + std::to_string(i) + " is not binary");
        grid[i / kGridSide][i % kGridSide] = values[i] == 1.0 ? 1 : 0;
    }
    return grid;
}

std::vector<Glyph> parse_font(std::istream& in)
{
    std::vector<Glyph> glyphs;
    std::set<char> seen;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&](std::string& out) {
        if (!std::getline(in, out))
            return false;
        out = strip_cr(std::move(out));
        ++line_no;
        return true;
    };

    while (next_line(line)) {
        if (line.empty())
            continue;
        if (line.size() != 8 || line.compare(0, 7, "letter ") != 0 || !is_upper_letter(line[7]))
            throw FontParseError(line_no, "expected header 'letter X' with X in A-Z");
        const std::size_t header_line = line_no;
        Glyph glyph;
        glyph.letter = line[7];
        if (!seen.insert(glyph.letter).second)
            throw FontParseError(line_no, std::string("duplicate letter ") + glyph.letter);

        for (std::size_t r = 0; r < kGridSide; ++r) {
            if (!next_line(line))
                throw FontParseError(line_no, "truncated glyph: expected 9 rows");
            if (line.size() != kGridSide)
                throw FontParseError(line_no, "line length " + std::to_string(line.size()) + ", expected 9");
            for (std::size_t c = 0; c < kGridSide; ++c) {
                if (line[c] != '.' && line[c] != '#')
                    throw FontParseError(line_no, std::string("invalid character '") + line[c] + "'");
                glyph.pixels[r][c] = line[c] == '#' ? 1 : 0;
            }
        }
        if (next_line(line) && !line.empty())
            throw FontParseError(line_no, "expected blank line after glyph rows");
        if (const std::string why = glyph_violation(glyph); !why.empty())
            throw FontParseError(header_line, why);
        glyphs.push_back(glyph);
    }
    return glyphs;
}

std::vector<Glyph> parse_font(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_font(in);
}

std::string render_font(const std::vector<Glyph>& glyphs)
{
    std::string out;
    out.reserve(glyphs.size() * (9 + kGridSide * (kGridSide + 1) + 1));
    for (const Glyph& g : glyphs) {
        out += "letter ";
        out += g.letter;
        out += '\n';
        for (const auto& row : g.pixels) {
            for (unsigned char p : row)
                out += p ? '#' : '.';
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

InputVector apply_noise(const InputVector& input, double rate, Rng& rng)
{
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("noise rate must be in [0, 1]");
    InputVector out(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double v = input[i];
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("apply_noise: input is not binary at index " + std::to_string(i));
        const bool flip = rng.uniform01() < rate;
        out[i] = flip ? 1.0 - v : v;
    }
    return out;
}

}  // namespace letterfeat
