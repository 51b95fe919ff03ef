#pragma once

#include <span>
#include <vector>

namespace fknne {

/// x' = (x - min) / (max - min). A constant input maps to all zeros.
std::vector<double> minmax_normalize(std::span<const double> values);

}  // namespace fknne
