#include "fknne/normalize.hpp"

#include <algorithm>

#include "fknne/error.hpp"

namespace fknne {

std::vector<double> minmax_normalize(std::span<const double> values) {
  if (values.empty()) throw Error("cannot normalize an empty sequence");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(values.size(), 0.0);
  if (range > 0.0) {
    std::transform(values.begin(), values.end(), out.begin(), [&](double x) { return (x - min) / range; });
  }
  return out;
}

}  // namespace fknne
