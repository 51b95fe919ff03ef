#pragma once

#include <string>
#include <vector>

namespace fknne {

/// Named real-valued features. Names are unique, values finite.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  /// Throws if `name` is not present.
  double get(const std::string& name) const;
  /// Throws on length mismatch, duplicate names or non-finite values.
  void validate() const;

  bool operator==(const FeatureVector&) const = default;
};

}  // namespace fknne
