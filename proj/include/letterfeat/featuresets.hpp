#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "letterfeat/glyphs.hpp"

namespace letterfeat {

inline constexpr std::size_t kFeatureSetCount = 10;

struct FeatureSet {
    char label = 'A';
    std::vector<char> letters;  // in table order

    friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

/// Partition of A..Z into similarly shaped groups, ordered by label
/// A, B, C, E, I, K, L, M, O, V. The position in `sets` is the class index.
struct FeatureSetTable {
    std::vector<FeatureSet> sets;
};

using TargetVector = std::vector<double>;

struct Pattern {
    InputVector input;
    TargetVector target;
};

using Dataset = std::vector<Pattern>;

const FeatureSetTable& builtin_feature_sets();

/// Class index of `letter`; throws std::invalid_argument for anything but A-Z
/// or a letter the table does not cover.
std::size_t class_of(const FeatureSetTable& table, char letter);

TargetVector one_hot(std::size_t index, std::size_t size);

/// Index of the (first) maximum entry.
std::size_t hot_index(const TargetVector& target);

/// Letter i -> one-hot of length 26 at i. Uses `glyphs` (must be a complete
/// alphabet in A..Z order) or the built-in font.
Dataset targets_experiment1(const std::vector<Glyph>& glyphs = builtin_alphabet());

/// Letter -> one-hot of length 10 at class_of(letter).
Dataset targets_experiment2(const std::vector<Glyph>& glyphs = builtin_alphabet());

/// One line per class: `A: A, H`.
std::string format_feature_sets(const FeatureSetTable& table);

}  // namespace letterfeat
