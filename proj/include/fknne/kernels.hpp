#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fknne {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce bitwise-identical results.
enum class Execution { serial, parallel };

namespace kernels {

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

/// Distances between every query row and every reference row, both given as
/// row-major matrices with `dim` columns. Result is queries x refs, row-major.
std::vector<double> distance_matrix(std::span<const double> queries, std::span<const double> refs, std::size_t dim,
                                    Execution exec);

/// Number of threads the parallel kernels will use.
int max_threads();

}  // namespace kernels
}  // namespace fknne
