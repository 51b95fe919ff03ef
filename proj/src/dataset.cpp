#include "fknne/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "fknne/error.hpp"

namespace fknne {

Dataset::Dataset(std::vector<std::string> feature_names, std::vector<std::string> classes, std::vector<Sample> samples)
    : feature_names_(std::move(feature_names)), classes_(std::move(classes)), samples_(std::move(samples)) {
  if (std::set<std::string>(feature_names_.begin(), feature_names_.end()).size() != feature_names_.size()) {
    throw Error("duplicate feature names in dataset schema");
  }
  if (std::set<std::string>(classes_.begin(), classes_.end()).size() != classes_.size()) {
    throw Error("duplicate class names");
  }
  std::set<std::string> ids;
  label_index_.reserve(samples_.size());
  for (const auto& s : samples_) {
    if (!ids.insert(s.id).second) throw Error("duplicate sample id '" + s.id + "'");
    if (s.features.size() != feature_names_.size()) {
      throw Error("sample '" + s.id + "' has " + std::to_string(s.features.size()) + " features, schema has " +
                  std::to_string(feature_names_.size()));
    }
    for (std::size_t f = 0; f < s.features.size(); ++f) {
      if (!std::isfinite(s.features[f])) {
        throw Error("sample '" + s.id + "' feature '" + feature_names_[f] + "' is not finite");
      }
    }
    const auto c = class_index(s.label);
    if (!c) throw Error("sample '" + s.id + "' has unknown label '" + s.label + "'");
    label_index_.push_back(*c);
  }
}

Dataset Dataset::from_samples(std::vector<std::string> feature_names, std::vector<Sample> samples) {
  std::set<std::string> labels;
  for (const auto& s : samples) labels.insert(s.label);
  return Dataset(std::move(feature_names), {labels.begin(), labels.end()}, std::move(samples));
}

std::optional<std::size_t> Dataset::class_index(const std::string& label) const {
  const auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

std::optional<std::size_t> Dataset::find(const std::string& id) const {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes_.size(), 0);
  for (auto c : label_index_) ++counts[c];
  return counts;
}

void Dataset::require_class_coverage() const {
  const auto counts = class_counts();
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (counts[c] == 0) throw Error("class '" + classes_[c] + "' has no samples");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Sample> picked;
  picked.reserve(indices.size());
  for (auto i : indices) {
    if (i >= samples_.size()) throw Error("sample index out of range");
    picked.push_back(samples_[i]);
  }
  return Dataset(feature_names_, classes_, std::move(picked));
}

Dataset Dataset::subset_by_id(std::span<const std::string> ids) const {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < samples_.size(); ++i) index.emplace(samples_[i].id, i);
  std::vector<std::size_t> picked;
  picked.reserve(ids.size());
  for (const auto& id : ids) {
    const auto it = index.find(id);
    if (it == index.end()) throw Error("unknown sample id '" + id + "'");
    picked.push_back(it->second);
  }
  return subset(picked);
}

Dataset Dataset::select_features(std::span<const std::string> names) const {
  std::vector<std::size_t> columns;
  std::vector<std::string> unknown;
  for (const auto& name : names) {
    const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end()) {
      unknown.push_back(name);
    } else {
      columns.push_back(static_cast<std::size_t>(it - feature_names_.begin()));
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
    throw Error("unknown feature names: " + list);
  }
  if (columns.empty()) throw Error("feature selection is empty");
  std::vector<Sample> rows;
  rows.reserve(samples_.size());
  for (const auto& s : samples_) {
    Sample r{s.id, s.label, {}};
    r.features.reserve(columns.size());
    for (auto c : columns) r.features.push_back(s.features[c]);
    rows.push_back(std::move(r));
  }
  return Dataset({names.begin(), names.end()}, classes_, std::move(rows));
}

}  // namespace fknne
