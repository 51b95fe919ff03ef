#include "fknne/kernels.hpp"

#include <omp.h>

#include "fknne/error.hpp"

namespace fknne::kernels {

std::vector<double> distance_matrix(std::span<const double> queries, std::span<const double> refs, std::size_t dim,
                                    Execution exec) {
  if (dim == 0) throw Error("distance matrix needs at least one feature");
  if (queries.size() % dim != 0 || refs.size() % dim != 0) throw Error("matrix size is not a multiple of dim");
  const auto nq = static_cast<std::ptrdiff_t>(queries.size() / dim);
  const auto nr = refs.size() / dim;
  std::vector<double> out(static_cast<std::size_t>(nq) * nr);

  const auto row = [&](std::ptrdiff_t q) {
    const auto query = queries.subspan(static_cast<std::size_t>(q) * dim, dim);
    double* dst = out.data() + static_cast<std::size_t>(q) * nr;
    for (std::size_t r = 0; r < nr; ++r) dst[r] = euclidean(query, refs.subspan(r * dim, dim));
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t q = 0; q < nq; ++q) row(q);
  } else {
    for (std::ptrdiff_t q = 0; q < nq; ++q) row(q);
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace fknne::kernels
