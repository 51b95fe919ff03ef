#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fknne/classifier.hpp"
#include "fknne/dataset.hpp"
#include "fknne/metrics.hpp"

namespace fknne {

inline constexpr std::string_view kDefaultPositive = "malignant";

struct Fold {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

/// Ids are sorted per class, shuffled with a seeded mt19937_64 Fisher-Yates,
/// then dealt round-robin into k folds (the dealing position carries over
/// between classes). Id lists in each fold are sorted.
std::vector<Fold> stratified_kfold(const Dataset& data, int k, std::uint64_t seed);

/// Per-class shuffle as above; round(fraction * n_c) samples of each class,
/// clamped to [1, n_c - 1], go to the single test split.
std::vector<Fold> stratified_holdout(const Dataset& data, double test_fraction, std::uint64_t seed);

/// One fold per sample, in id order.
std::vector<Fold> leave_one_out(const Dataset& data);

struct Protocol {
  enum class Kind { kfold, loocv, holdout };

  Kind kind = Kind::kfold;
  int folds = 10;
  double fraction = 0.3;
  std::uint64_t seed = 0;

  static Protocol kfold(int k, std::uint64_t seed) { return {Kind::kfold, k, 0.3, seed}; }
  static Protocol loocv() { return {Kind::loocv, 0, 0.3, 0}; }
  static Protocol holdout(double fraction, std::uint64_t seed) { return {Kind::holdout, 0, fraction, seed}; }

  /// "kfold(10)", "loocv", "holdout(0.3)".
  std::string name() const;
  void validate() const;

  bool operator==(const Protocol&) const = default;
};

struct SamplePrediction {
  std::string id;
  std::string truth;
  std::string predicted;
  double score = 0.0;  // positive-class membership
  int fold = 0;
};

struct FoldReport {
  int index = 0;
  ConfusionCounts counts;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  double accuracy = 0.0;
  std::optional<double> auc;
};

/// Mean of per-fold values over the folds where each value is defined.
struct AveragedRates {
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  double accuracy = 0.0;
  std::optional<double> auc;
};

struct EvaluationReport {
  ClassifierConfig config;
  Protocol protocol;
  std::string positive_class;
  std::vector<std::string> features;
  std::size_t n_samples = 0;

  /// One confusion matrix over every held-out prediction.
  ConfusionCounts pooled_counts;
  Rates pooled;
  /// ROC and AUC over the pooled positive-class scores.
  RocCurve roc;
  double auc = 0.0;

  AveragedRates averaged;
  std::vector<FoldReport> folds;
  /// Held-out predictions sorted by id.
  std::vector<SamplePrediction> predictions;
};

std::vector<Fold> make_folds(const Dataset& data, const Protocol& protocol);

/// Fits on each training split and predicts its test split. Folds run
/// concurrently on the parallel path; the report does not depend on it.
EvaluationReport evaluate(const Dataset& data, const ClassifierConfig& cfg, const Protocol& protocol,
                          std::string_view positive = kDefaultPositive, Execution exec = Execution::parallel);

/// Jack-knife: evaluate() with Protocol::loocv().
EvaluationReport loocv(const Dataset& data, const ClassifierConfig& cfg, std::string_view positive = kDefaultPositive,
                       Execution exec = Execution::parallel);

struct ComparisonRow {
  std::string method;
  ClassifierConfig config;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double accuracy = 0.0;
  double auc = 0.0;

  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonTable {
  Protocol protocol;
  std::string positive_class;
  std::vector<ComparisonRow> rows;

  bool operator==(const ComparisonTable&) const = default;
};

/// One row per config, in input order, carrying the pooled rates and AUC.
/// Rows are labelled by method name, with "@k=<k>" appended when `label_k`.
ComparisonTable compare_classifiers(const Dataset& data, const std::vector<ClassifierConfig>& configs,
                                    const Protocol& protocol, std::string_view positive = kDefaultPositive,
                                    bool label_k = false, Execution exec = Execution::parallel,
                                    std::vector<EvaluationReport>* reports = nullptr);

}  // namespace fknne
