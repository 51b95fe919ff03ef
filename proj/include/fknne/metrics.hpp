#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fknne/classifier.hpp"

namespace fknne {

/// Binary confusion counts; the positive class is the one designated by the caller.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  std::int64_t positives() const { return tp + fn; }
  std::int64_t negatives() const { return tn + fp; }

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

struct Rates {
  double sensitivity = 0.0;
  double specificity = 0.0;
  double accuracy = 0.0;

  bool operator==(const Rates&) const = default;
};

/// Throws on length mismatch or when `positive` is not one of `classes`.
ConfusionCounts confusion(std::span<const Prediction> predictions, std::span<const std::string> truth,
                          std::span<const std::string> classes, std::string_view positive);

/// Throws when either the positive or the negative population is empty.
Rates rates(const ConfusionCounts& c);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  /// Samples scoring >= threshold are called positive; +inf for the origin.
  double threshold = std::numeric_limits<double>::infinity();

  bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Threshold sweep over distinct scores, highest first. Tied scores move
/// together, so a tie between classes produces one diagonal step. Throws
/// unless both classes are present.
RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& is_positive);
RocCurve roc_curve(std::span<const double> scores, std::span<const std::string> truth, std::string_view positive);

/// Trapezoidal area under roc_curve().
double auc(std::span<const double> scores, const std::vector<bool>& is_positive);
double auc(std::span<const double> scores, std::span<const std::string> truth, std::string_view positive);

}  // namespace fknne
