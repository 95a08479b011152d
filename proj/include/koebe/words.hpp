#pragma once

#include <functional>
#include <vector>

#include "koebe/moebius.hpp"

namespace koebe {

// Letters 2i and 2i+1 stand for generator i and its inverse.
using Word = std::vector<int>;

// Visits every nonempty freely reduced word of length <= max_length in
// lexicographic order (a prefix precedes its extensions). The visitor returns
// false to stop the enumeration; the function then returns false as well.
bool for_each_word(const std::vector<Moebius>& generators, int max_length,
                   const std::function<bool(const Word&, const Moebius&)>& visit);

std::string word_string(const Word& w);

}  // namespace koebe
