#include "fknne/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fknne/error.hpp"
#include "fknne/texture.hpp"

namespace fknne {
namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on raw mt19937_64 output; std::normal_distribution is not
// reproducible across standard libraries.
double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit(rng);
  const double u2 = unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Dataset make_two_clusters(const SyntheticConfig& cfg) {
  if (cfg.per_class < 1) throw Error("synthetic dataset needs at least one sample per class");
  if (!(cfg.spread >= 0.0)) throw Error("cluster spread must be non-negative");
  auto names = cfg.feature_names.empty() ? feature_schema() : cfg.feature_names;

  std::mt19937_64 rng(cfg.seed);
  std::vector<Sample> samples;
  const int total = 2 * cfg.per_class;
  const int digits = std::max(3, static_cast<int>(std::to_string(total - 1).size()));
  for (int i = 0; i < total; ++i) {
    const bool malignant = i >= cfg.per_class;
    auto number = std::to_string(i);
    number.insert(0, static_cast<std::size_t>(digits) - number.size(), '0');
    Sample s{"syn" + number, malignant ? "malignant" : "benign", {}};
    const double centre = malignant ? cfg.separation : 0.0;
    for (std::size_t f = 0; f < names.size(); ++f) s.features.push_back(centre + cfg.spread * gaussian(rng));
    samples.push_back(std::move(s));
  }
  return Dataset(std::move(names), {"benign", "malignant"}, std::move(samples));
}

}  // namespace fknne
