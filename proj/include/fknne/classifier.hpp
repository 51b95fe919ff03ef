#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fknne/dataset.hpp"
#include "fknne/feature_vector.hpp"
#include "fknne/kernels.hpp"

namespace fknne {

enum class Kind { knn, fknn, knne, fknne };
enum class Init { crisp, keller };
enum class Metric { euclidean };

std::string to_string(Kind kind);
std::string to_string(Init init);
Kind parse_kind(std::string_view name);
Init parse_init(std::string_view name);

struct ClassifierConfig {
  Kind kind = Kind::fknne;
  int k = 3;
  /// Fuzzifier; neighbour weights are d^(-2/(m-1)).
  double m = 2.0;
  Init init = Init::keller;
  /// Neighbourhood size for Keller membership initialisation; defaults to k.
  std::optional<int> k_init;
  Metric metric = Metric::euclidean;
  /// Min-max scale every feature using the training range.
  bool normalize = true;

  int effective_k_init() const { return k_init.value_or(k); }
  void validate() const;

  bool operator==(const ClassifierConfig&) const = default;
};

struct Neighbor {
  std::size_t index = 0;  // position in the training set
  std::string id;
  double distance = 0.0;

  bool operator==(const Neighbor&) const = default;
};

struct Prediction {
  std::size_t label_index = 0;
  std::string label;
  /// One score per class, in training class order. Each in [0,1], sum 1.
  std::vector<double> scores;
};

/// A memorised training set with per-sample fuzzy memberships. Immutable
/// after fit(); safe to share between threads.
class FitModel {
 public:
  const ClassifierConfig& config() const { return config_; }
  const Dataset& training() const { return training_; }
  const std::vector<std::string>& classes() const { return training_.classes(); }
  std::size_t size() const { return training_.size(); }
  std::size_t dim() const { return training_.dim(); }

  /// Per-feature (min, max) from the training data; empty when normalize=false.
  const std::vector<std::pair<double, double>>& norm_params() const { return norm_params_; }
  /// Membership vector of training sample j over classes().
  std::span<const double> membership(std::size_t j) const;
  /// Training row j after normalisation.
  std::span<const double> point(std::size_t j) const;
  /// Row-major normalised training matrix.
  std::span<const double> points() const { return points_; }

  int k_init_used() const { return k_init_used_; }
  /// Set when the requested k_init had to be reduced to N-1.
  bool k_init_clamped() const { return k_init_clamped_; }

  /// Validates the dimension and applies the training normalisation.
  std::vector<double> prepare(std::span<const double> x) const;
  /// Order key of sample j's id; smaller ids sort first on distance ties.
  std::size_t id_rank(std::size_t j) const { return id_rank_[j]; }

 private:
  friend FitModel fit(const Dataset& data, const ClassifierConfig& cfg, Execution exec);

  ClassifierConfig config_;
  Dataset training_;
  std::vector<std::pair<double, double>> norm_params_;
  std::vector<double> points_;
  std::vector<double> memberships_;
  std::vector<std::size_t> id_rank_;
  int k_init_used_ = 0;
  bool k_init_clamped_ = false;
};

FitModel fit(const Dataset& data, const ClassifierConfig& cfg, Execution exec = Execution::parallel);

/// Exact k nearest training samples to a raw (unnormalised) query, ordered by
/// (distance, id). Returns every candidate when fewer than k exist.
std::vector<Neighbor> kneighbors(const FitModel& model, std::span<const double> x, int k,
                                 std::optional<std::size_t> class_filter = std::nullopt);
std::vector<Neighbor> kneighbors(const FitModel& model, const FeatureVector& x, int k,
                                 const std::optional<std::string>& class_filter = std::nullopt);

Prediction predict_knn(const FitModel& model, std::span<const double> x);
Prediction predict_fknn(const FitModel& model, std::span<const double> x);
Prediction predict_knne(const FitModel& model, std::span<const double> x);
Prediction predict_fknne(const FitModel& model, std::span<const double> x);

/// Dispatches on model.config().kind.
Prediction predict(const FitModel& model, std::span<const double> x);
Prediction predict(const FitModel& model, const FeatureVector& x);

/// predict() over many queries; the parallel path splits queries across threads.
std::vector<Prediction> predict_batch(const FitModel& model, std::span<const std::vector<double>> queries,
                                      Execution exec = Execution::parallel);

}  // namespace fknne
