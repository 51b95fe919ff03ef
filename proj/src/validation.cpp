#include "fknne/validation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "fknne/error.hpp"

namespace fknne {
namespace {

// Uniform integer in [0, n) by rejection; unlike std::uniform_int_distribution
// the sequence is fixed across standard library implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

void shuffle(std::vector<std::string>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[bounded(rng, i)]);
  }
}

/// Sorted ids of each class, in class order.
std::vector<std::vector<std::string>> ids_by_class(const Dataset& data) {
  std::vector<std::vector<std::string>> out(data.classes().size());
  for (std::size_t i = 0; i < data.size(); ++i) out[data.label_index(i)].push_back(data.sample(i).id);
  for (auto& ids : out) std::sort(ids.begin(), ids.end());
  return out;
}

std::vector<std::string> complement(const Dataset& data, const std::vector<std::string>& sorted_test) {
  std::vector<std::string> all;
  all.reserve(data.size());
  for (const auto& s : data.samples()) all.push_back(s.id);
  std::sort(all.begin(), all.end());
  std::vector<std::string> train;
  std::set_difference(all.begin(), all.end(), sorted_test.begin(), sorted_test.end(), std::back_inserter(train));
  return train;
}

}  // namespace

std::vector<Fold> stratified_kfold(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 2) throw Error("k-fold needs k >= 2, got " + std::to_string(k));
  auto groups = ids_by_class(data);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (groups[c].size() < static_cast<std::size_t>(k)) {
      throw Error("class '" + data.classes()[c] + "' has " + std::to_string(groups[c].size()) +
                  " samples, fewer than " + std::to_string(k) + " folds");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> tests(static_cast<std::size_t>(k));
  std::size_t deal = 0;
  for (auto& ids : groups) {
    shuffle(ids, rng);
    for (auto& id : ids) tests[deal++ % tests.size()].push_back(std::move(id));
  }
  std::vector<Fold> folds;
  for (auto& test : tests) {
    std::sort(test.begin(), test.end());
    folds.push_back(Fold{complement(data, test), std::move(test)});
  }
  return folds;
}

std::vector<Fold> stratified_holdout(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw Error("holdout fraction must be in (0, 1)");
  auto groups = ids_by_class(data);
  std::mt19937_64 rng(seed);
  std::vector<std::string> test;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    auto& ids = groups[c];
    if (ids.size() < 2) throw Error("holdout needs at least 2 samples of class '" + data.classes()[c] + "'");
    shuffle(ids, rng);
    const auto n = static_cast<long>(ids.size());
    const auto take = std::clamp(std::lround(test_fraction * static_cast<double>(n)), 1L, n - 1);
    test.insert(test.end(), ids.begin(), ids.begin() + take);
  }
  std::sort(test.begin(), test.end());
  return {Fold{complement(data, test), std::move(test)}};
}

std::vector<Fold> leave_one_out(const Dataset& data) {
  if (data.size() < 2) throw Error("leave-one-out needs at least 2 samples");
  std::vector<std::string> ids;
  for (const auto& s : data.samples()) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  std::vector<Fold> folds;
  for (const auto& id : ids) {
    std::vector<std::string> test{id};
    folds.push_back(Fold{complement(data, test), std::move(test)});
  }
  return folds;
}

std::string Protocol::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kfold: out << "kfold(" << folds << ")"; break;
    case Kind::loocv: out << "loocv"; break;
    case Kind::holdout: out << "holdout(" << fraction << ")"; break;
  }
  return out.str();
}

void Protocol::validate() const {
  if (kind == Kind::kfold && folds < 2) throw Error("k-fold needs k >= 2, got " + std::to_string(folds));
  if (kind == Kind::holdout && !(fraction > 0.0 && fraction < 1.0)) throw Error("holdout fraction must be in (0, 1)");
}

std::vector<Fold> make_folds(const Dataset& data, const Protocol& protocol) {
  protocol.validate();
  switch (protocol.kind) {
    case Protocol::Kind::kfold: return stratified_kfold(data, protocol.folds, protocol.seed);
    case Protocol::Kind::loocv: return leave_one_out(data);
    case Protocol::Kind::holdout: return stratified_holdout(data, protocol.fraction, protocol.seed);
  }
  throw Error("unknown protocol");
}

namespace {

struct FoldOutcome {
  std::vector<SamplePrediction> predictions;
  std::vector<Prediction> raw;
  std::vector<std::string> truth;
};

FoldOutcome run_fold(const Dataset& data, const ClassifierConfig& cfg, const Fold& fold, std::size_t positive_index,
                     int index) {
  const auto train = data.subset_by_id(fold.train_ids);
  const auto test = data.subset_by_id(fold.test_ids);
  const auto model = fit(train, cfg, Execution::serial);
  std::vector<std::vector<double>> queries;
  for (const auto& s : test.samples()) queries.push_back(s.features);
  FoldOutcome out;
  out.raw = predict_batch(model, queries, Execution::serial);
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& s = test.sample(i);
    out.truth.push_back(s.label);
    out.predictions.push_back(
        SamplePrediction{s.id, s.label, out.raw[i].label, out.raw[i].scores[positive_index], index});
  }
  return out;
}

template <typename T>
std::optional<double> mean_of(const std::vector<std::optional<T>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

EvaluationReport evaluate(const Dataset& data, const ClassifierConfig& cfg, const Protocol& protocol,
                          std::string_view positive, Execution exec) {
  cfg.validate();
  protocol.validate();
  const auto positive_index = data.class_index(std::string(positive));
  if (!positive_index) throw Error("positive class '" + std::string(positive) + "' does not occur in the data");
  const auto counts = data.class_counts();
  if (counts[*positive_index] == 0 || counts[*positive_index] == data.size()) {
    throw Error("evaluation needs both positive ('" + std::string(positive) + "') and negative samples");
  }

  const auto folds = make_folds(data, protocol);
  std::vector<FoldOutcome> outcomes(folds.size());
  std::vector<std::exception_ptr> errors(folds.size());
  const auto run = [&](std::ptrdiff_t f) {
    try {
      outcomes[f] = run_fold(data, cfg, folds[f], *positive_index, static_cast<int>(f));
    } catch (...) {
      errors[f] = std::current_exception();
    }
  };
  const auto nf = static_cast<std::ptrdiff_t>(folds.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t f = 0; f < nf; ++f) run(f);
  } else {
    for (std::ptrdiff_t f = 0; f < nf; ++f) run(f);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvaluationReport report;
  report.config = cfg;
  report.protocol = protocol;
  report.positive_class = std::string(positive);
  report.features = data.feature_names();
  report.n_samples = data.size();

  std::vector<std::optional<double>> sens, spec, fold_auc;
  std::vector<std::optional<double>> acc;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto& o = outcomes[f];
    FoldReport fr;
    fr.index = static_cast<int>(f);
    fr.counts = confusion(o.raw, o.truth, data.classes(), positive);
    if (fr.counts.positives() > 0) fr.sensitivity = static_cast<double>(fr.counts.tp) / fr.counts.positives();
    if (fr.counts.negatives() > 0) fr.specificity = static_cast<double>(fr.counts.tn) / fr.counts.negatives();
    fr.accuracy = static_cast<double>(fr.counts.tp + fr.counts.tn) / static_cast<double>(fr.counts.total());
    if (fr.counts.positives() > 0 && fr.counts.negatives() > 0) {
      std::vector<double> scores;
      for (const auto& p : o.predictions) scores.push_back(p.score);
      fr.auc = auc(scores, o.truth, positive);
    }
    report.pooled_counts += fr.counts;
    sens.push_back(fr.sensitivity);
    spec.push_back(fr.specificity);
    acc.push_back(fr.accuracy);
    fold_auc.push_back(fr.auc);
    report.folds.push_back(fr);
    report.predictions.insert(report.predictions.end(), o.predictions.begin(), o.predictions.end());
  }
  std::sort(report.predictions.begin(), report.predictions.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  report.pooled = rates(report.pooled_counts);
  std::vector<double> scores;
  std::vector<std::string> truth;
  for (const auto& p : report.predictions) {
    scores.push_back(p.score);
    truth.push_back(p.truth);
  }
  report.roc = roc_curve(scores, truth, positive);
  report.auc = report.roc.auc;
  report.averaged = AveragedRates{mean_of(sens), mean_of(spec), mean_of(acc).value_or(0.0), mean_of(fold_auc)};
  return report;
}

EvaluationReport loocv(const Dataset& data, const ClassifierConfig& cfg, std::string_view positive, Execution exec) {
  return evaluate(data, cfg, Protocol::loocv(), positive, exec);
}

ComparisonTable compare_classifiers(const Dataset& data, const std::vector<ClassifierConfig>& configs,
                                    const Protocol& protocol, std::string_view positive, bool label_k, Execution exec,
                                    std::vector<EvaluationReport>* reports) {
  if (configs.empty()) throw Error("comparison needs at least one classifier");
  ComparisonTable table{protocol, std::string(positive), {}};
  for (const auto& cfg : configs) {
    auto report = evaluate(data, cfg, protocol, positive, exec);
    std::string method = to_string(cfg.kind);
    if (label_k) method += "@k=" + std::to_string(cfg.k);
    table.rows.push_back(ComparisonRow{std::move(method), cfg, report.pooled.sensitivity, report.pooled.specificity,
                                       report.pooled.accuracy, report.auc});
    if (reports) reports->push_back(std::move(report));
  }
  return table;
}

}  // namespace fknne
