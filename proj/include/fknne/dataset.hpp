#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fknne {

struct Sample {
  std::string id;
  std::string label;
  std::vector<double> features;
};

/// Labeled samples sharing one feature schema.
///
/// Construction checks that ids are unique, every label is a listed class,
/// every row matches the schema and every value is finite. A class may be
/// listed without samples (training subsets of leave-one-out splits);
/// require_class_coverage() enforces the stricter invariant where it matters.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<std::string> feature_names, std::vector<std::string> classes, std::vector<Sample> samples);

  /// Classes are the distinct labels in lexicographic order.
  static Dataset from_samples(std::vector<std::string> feature_names, std::vector<Sample> samples);

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::size_t dim() const { return feature_names_.size(); }
  bool empty() const { return samples_.empty(); }

  const Sample& sample(std::size_t i) const { return samples_[i]; }
  /// Index of the sample's label within classes().
  std::size_t label_index(std::size_t i) const { return label_index_[i]; }
  std::optional<std::size_t> class_index(const std::string& label) const;
  std::optional<std::size_t> find(const std::string& id) const;

  std::vector<std::size_t> class_counts() const;
  /// Throws unless every listed class has at least one sample.
  void require_class_coverage() const;

  /// Samples at `indices`, keeping the class list.
  Dataset subset(std::span<const std::size_t> indices) const;
  /// Samples with the given ids, keeping the class list. Throws on unknown ids.
  Dataset subset_by_id(std::span<const std::string> ids) const;
  /// Restricts to the named features, in the given order. Throws listing any
  /// unknown names.
  Dataset select_features(std::span<const std::string> names) const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<std::string> classes_;
  std::vector<Sample> samples_;
  std::vector<std::size_t> label_index_;
};

}  // namespace fknne
