#include "fknne/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "fknne/error.hpp"

namespace fknne {

ConfusionCounts confusion(std::span<const Prediction> predictions, std::span<const std::string> truth,
                          std::span<const std::string> classes, std::string_view positive) {
  if (predictions.size() != truth.size()) {
    throw Error("prediction count " + std::to_string(predictions.size()) + " does not match truth count " +
                std::to_string(truth.size()));
  }
  if (std::find(classes.begin(), classes.end(), positive) == classes.end()) {
    throw Error("positive class '" + std::string(positive) + "' is not among the classes");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == positive;
    const bool called = predictions[i].label == positive;
    if (actual && called) ++c.tp;
    else if (actual) ++c.fn;
    else if (called) ++c.fp;
    else ++c.tn;
  }
  return c;
}

Rates rates(const ConfusionCounts& c) {
  if (c.positives() == 0) throw Error("sensitivity undefined: no positive samples");
  if (c.negatives() == 0) throw Error("specificity undefined: no negative samples");
  return Rates{static_cast<double>(c.tp) / static_cast<double>(c.positives()),
               static_cast<double>(c.tn) / static_cast<double>(c.negatives()),
               static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total())};
}

RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& is_positive) {
  if (scores.size() != is_positive.size()) throw Error("score and label counts differ");
  const auto n_pos = std::count(is_positive.begin(), is_positive.end(), true);
  const auto n_neg = static_cast<std::ptrdiff_t>(is_positive.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw Error("ROC needs both positive and negative samples");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.points.push_back(RocPoint{});
  std::int64_t tp = 0, fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      if (is_positive[order[i]]) ++tp;
      else ++fp;
    }
    RocPoint p{static_cast<double>(fp) / static_cast<double>(n_neg), static_cast<double>(tp) / static_cast<double>(n_pos),
               threshold};
    const auto& prev = roc.points.back();
    area += (p.fpr - prev.fpr) * (p.tpr + prev.tpr) / 2.0;
    roc.points.push_back(p);
  }
  roc.auc = area;
  return roc;
}

namespace {

std::vector<bool> positive_mask(std::span<const std::string> truth, std::string_view positive) {
  std::vector<bool> mask(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) mask[i] = truth[i] == positive;
  return mask;
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores, std::span<const std::string> truth, std::string_view positive) {
  return roc_curve(scores, positive_mask(truth, positive));
}

double auc(std::span<const double> scores, const std::vector<bool>& is_positive) {
  return roc_curve(scores, is_positive).auc;
}

double auc(std::span<const double> scores, std::span<const std::string> truth, std::string_view positive) {
  return roc_curve(scores, truth, positive).auc;
}

}  // namespace fknne
