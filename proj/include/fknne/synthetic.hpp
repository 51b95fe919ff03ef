#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fknne/dataset.hpp"

namespace fknne {

struct SyntheticConfig {
  int per_class = 30;
  std::uint64_t seed = 7;
  /// Distance between the two cluster centres along every axis.
  double separation = 10.0;
  /// Standard deviation of each cluster.
  double spread = 0.5;
  /// Defaults to the texture feature schema when empty.
  std::vector<std::string> feature_names;
};

/// Two isotropic Gaussian clusters labelled "benign" and "malignant" with ids
/// syn000, syn001, ... Output depends only on the config.
Dataset make_two_clusters(const SyntheticConfig& cfg = {});

}  // namespace fknne
