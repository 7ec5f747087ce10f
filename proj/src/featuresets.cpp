#include "letterfeat/featuresets.hpp"

#include <algorithm>
#include <stdexcept>

namespace letterfeat {

namespace {

void require_alphabet_order(const std::vector<Glyph>& glyphs)
{
    if (glyphs.size() != kLetterCount)
        throw std::invalid_argument("expected a complete 26-letter alphabet");
    for (std::size_t i = 0; i < kLetterCount; ++i)
        if (glyphs[i].letter != static_cast<char>('A' + i))
            throw std::invalid_argument("alphabet must be ordered A..Z");
}

}  // namespace

const FeatureSetTable& builtin_feature_sets()
{
    static const FeatureSetTable table{{
        {'A', {'A', 'H'}},
        {'B', {'B', 'R', 'P'}},
        {'C', {'C', 'G'}},
        {'E', {'E', 'F', 'S'}},
        {'I', {'Z', 'T', 'I', 'J'}},
        {'K', {'Y', 'K', 'X'}},
        {'L', {'L', 'U'}},
        {'M', {'N', 'M'}},
        {'O', {'O', 'Q', 'D'}},
        {'V', {'V', 'W'}},
    }};
    return table;
}

std::size_t class_of(const FeatureSetTable& table, char letter)
{
    if (letter < 'A' || letter > 'Z')
        throw std::invalid_argument(std::string("class_of: not an uppercase letter: ") + letter);
    for (std::size_t k = 0; k < table.sets.size(); ++k) {
        const auto& letters = table.sets[k].letters;
        if (std::find(letters.begin(), letters.end(), letter) != letters.end())
            return k;
    }
    throw std::invalid_argument(std::string("class_of: letter not in table: ") + letter);
}

TargetVector one_hot(std::size_t index, std::size_t size)
{
    if (index >= size)
        throw std::invalid_argument("one_hot: index out of range");
    TargetVector t(size, 0.0);
    t[index] = 1.0;
    return t;
}

std::size_t hot_index(const TargetVector& target)
{
    if (target.empty())
        throw std::invalid_argument("hot_index: empty target");
    return static_cast<std::size_t>(std::max_element(target.begin(), target.end()) - target.begin());
}

Dataset targets_experiment1(const std::vector<Glyph>& glyphs)
{
    require_alphabet_order(glyphs);
    Dataset data;
    data.reserve(kLetterCount);
    for (std::size_t i = 0; i < kLetterCount; ++i)
        data.push_back({flatten(glyphs[i]), one_hot(i, kLetterCount)});
    return data;
}

Dataset targets_experiment2(const std::vector<Glyph>& glyphs)
{
    require_alphabet_order(glyphs);
    const FeatureSetTable& table = builtin_feature_sets();
    Dataset data;
    data.reserve(kLetterCount);
    for (const Glyph& g : glyphs)
        data.push_back({flatten(g), one_hot(class_of(table, g.letter), table.sets.size())});
    return data;
}

std::string format_feature_sets(const FeatureSetTable& table)
{
    std::string out;
    for (const FeatureSet& set : table.sets) {
        out += set.label;
        out += ':';
        for (std::size_t i = 0; i < set.letters.size(); ++i) {
            out += i == 0 ? " " : ", ";
            out += set.letters[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace letterfeat
