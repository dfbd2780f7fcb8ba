#pragma once

#include <cstdint>
#include <vector>

namespace eahdim {

// Letters are 1-based symbols 1..S over the alphabet of the accompanying IFS.
using Letter = int;
using Word = std::vector<Letter>;

} // namespace eahdim
