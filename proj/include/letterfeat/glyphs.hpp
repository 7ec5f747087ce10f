#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "letterfeat/rng.hpp"

namespace letterfeat {

inline constexpr std::size_t kGridSide = 9;
inline constexpr std::size_t kInputCount = kGridSide * kGridSide;
inline constexpr std::size_t kLetterCount = 26;

/// 9x9 binary pixel grid, row-major.
using PixelGrid = std::array<std::array<unsigned char, kGridSide>, kGridSide>;

/// Flattened network input. Length is always 81 for glyph-derived vectors.
using InputVector = std::vector<double>;

/// One letter of the alphabet as a 9x9 bitmap.
struct Glyph {
    char letter = 'A';
    PixelGrid pixels{};

    friend bool operator==(const Glyph&, const Glyph&) = default;
};

/// Thrown by parse_font; what() names the offending line.
class FontParseError : public std::runtime_error {
public:
    FontParseError(std::size_t line, const std::string& reason);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Returns the reason the glyph violates an invariant, or an empty string.
std::string glyph_violation(const Glyph& glyph);

/// The shipped 26-letter font, A..Z in order.
const std::vector<Glyph>& builtin_alphabet();

/// Lookup in builtin_alphabet(); throws std::invalid_argument for non A-Z.
const Glyph& builtin_glyph(char letter);

/// Row-major flatten: index = 9*row + col.
InputVector flatten(const Glyph& glyph);
InputVector flatten(const PixelGrid& grid);

/// Inverse of flatten for binary vectors. Throws on wrong length or non-binary values.
PixelGrid unflatten(const InputVector& values);

/// Parses the `letter X` + 9 rows of '.'/'#' text format. Glyphs are returned in
/// file order and validated. Throws FontParseError.
std::vector<Glyph> parse_font(std::istream& in);
std::vector<Glyph> parse_font(std::string_view text);

/// Writes glyphs in the same format parse_font reads.
std::string render_font(const std::vector<Glyph>& glyphs);

/// Flips each of the 81 entries independently with probability `rate`.
///
/// Consumes exactly input.size() draws of rng.uniform01(), one per entry in
/// index order; entry i flips iff its draw is < rate. Throws
/// std::invalid_argument if rate is outside [0, 1] or the input is not binary.
InputVector apply_noise(const InputVector& input, double rate, Rng& rng);

}  // namespace letterfeat
