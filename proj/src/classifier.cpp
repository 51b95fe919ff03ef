#include "fknne/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fknne/error.hpp"

namespace fknne {

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::knn: return "knn";
    case Kind::fknn: return "fknn";
    case Kind::knne: return "knne";
    case Kind::fknne: return "fknne";
  }
  return "?";
}

std::string to_string(Init init) { return init == Init::crisp ? "crisp" : "keller"; }

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::knn, Kind::fknn, Kind::knne, Kind::fknne}) {
    if (name == to_string(k)) return k;
  }
  throw Error("unknown classifier '" + std::string(name) + "' (expected knn, fknn, knne or fknne)");
}

Init parse_init(std::string_view name) {
  if (name == "crisp") return Init::crisp;
  if (name == "keller") return Init::keller;
  throw Error("unknown membership init '" + std::string(name) + "' (expected crisp or keller)");
}

void ClassifierConfig::validate() const {
  if (k < 1) throw Error("k must be >= 1, got " + std::to_string(k));
  if (!(m > 1.0) || !std::isfinite(m)) throw Error("fuzzifier m must be > 1, got " + std::to_string(m));
  if (k_init && *k_init < 1) throw Error("k_init must be >= 1, got " + std::to_string(*k_init));
}

namespace {

/// Indices of the k smallest distances, ordered by (distance, id rank).
template <typename Keep>
std::vector<std::size_t> nearest(const FitModel& model, std::span<const double> dist, std::size_t k, Keep keep) {
  std::vector<std::size_t> candidates;
  candidates.reserve(dist.size());
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (keep(j)) candidates.push_back(j);
  }
  const auto take = std::min(k, candidates.size());
  const auto before = [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return model.id_rank(a) < model.id_rank(b);
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                    before);
  candidates.resize(take);
  return candidates;
}

std::vector<std::size_t> nearest_all(const FitModel& model, std::span<const double> dist, std::size_t k) {
  return nearest(model, dist, k, [](std::size_t) { return true; });
}

std::vector<std::size_t> nearest_in_class(const FitModel& model, std::span<const double> dist, std::size_t k,
                                          std::size_t cls) {
  return nearest(model, dist, k, [&](std::size_t j) { return model.training().label_index(j) == cls; });
}

std::size_t first_max(const std::vector<double>& scores) {
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

Prediction make_prediction(const FitModel& model, std::size_t label, std::vector<double> scores) {
  return Prediction{label, model.classes()[label], std::move(scores)};
}

/// Average membership over the neighbours at distance zero, if any.
std::optional<std::vector<double>> exact_match_scores(const FitModel& model, std::span<const double> dist,
                                                      std::span<const std::size_t> neighbours) {
  const std::size_t nc = model.classes().size();
  std::vector<double> scores(nc, 0.0);
  std::size_t matches = 0;
  for (auto j : neighbours) {
    if (dist[j] != 0.0) continue;
    ++matches;
    const auto u = model.membership(j);
    for (std::size_t c = 0; c < nc; ++c) scores[c] += u[c];
  }
  if (matches == 0) return std::nullopt;
  for (auto& s : scores) s /= static_cast<double>(matches);
  return scores;
}

/// Inverse-distance weights d^(-2/(m-1)), expressed relative to the nearest
/// neighbour so that they stay finite; the common factor cancels on normalising.
double fuzzy_weight(double d, double d_min, double m) { return std::pow(d_min / d, 2.0 / (m - 1.0)); }

Prediction knn_from(const FitModel& model, std::span<const double> dist) {
  const auto nb = nearest_all(model, dist, static_cast<std::size_t>(model.config().k));
  const std::size_t nc = model.classes().size();
  std::vector<double> votes(nc, 0.0), dist_sum(nc, 0.0);
  for (auto j : nb) {
    const auto c = model.training().label_index(j);
    votes[c] += 1.0;
    dist_sum[c] += dist[j];
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < nc; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && dist_sum[c] < dist_sum[best])) best = c;
  }
  for (auto& v : votes) v /= static_cast<double>(nb.size());
  return make_prediction(model, best, std::move(votes));
}

Prediction fknn_from(const FitModel& model, std::span<const double> dist) {
  const auto nb = nearest_all(model, dist, static_cast<std::size_t>(model.config().k));
  if (auto exact = exact_match_scores(model, dist, nb)) {
    const auto label = first_max(*exact);
    return make_prediction(model, label, std::move(*exact));
  }
  const std::size_t nc = model.classes().size();
  const double d_min = dist[nb.front()];
  std::vector<double> scores(nc, 0.0);
  double total = 0.0;
  for (auto j : nb) {
    const double w = fuzzy_weight(dist[j], d_min, model.config().m);
    const auto u = model.membership(j);
    for (std::size_t c = 0; c < nc; ++c) scores[c] += u[c] * w;
    total += w;
  }
  for (auto& s : scores) s /= total;
  const auto label = first_max(scores);
  return make_prediction(model, label, std::move(scores));
}

std::vector<std::vector<std::size_t>> class_pools(const FitModel& model, std::span<const double> dist) {
  std::vector<std::vector<std::size_t>> pools;
  for (std::size_t c = 0; c < model.classes().size(); ++c) {
    pools.push_back(nearest_in_class(model, dist, static_cast<std::size_t>(model.config().k), c));
  }
  return pools;
}

Prediction knne_from(const FitModel& model, std::span<const double> dist) {
  const auto pools = class_pools(model, dist);
  const std::size_t nc = pools.size();
  std::vector<double> mean(nc, 0.0);
  std::optional<std::size_t> best;
  bool any_zero = false;
  for (std::size_t c = 0; c < nc; ++c) {
    if (pools[c].empty()) continue;
    double sum = 0.0;
    for (auto j : pools[c]) sum += dist[j];
    mean[c] = sum / static_cast<double>(pools[c].size());
    if (!best || mean[c] < mean[*best]) best = c;
    any_zero = any_zero || mean[c] == 0.0;
  }
  std::vector<double> scores(nc, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    if (pools[c].empty()) continue;
    if (any_zero) {
      scores[c] = mean[c] == 0.0 ? 1.0 : 0.0;
    } else {
      scores[c] = 1.0 / mean[c];
    }
    total += scores[c];
  }
  for (auto& s : scores) s /= total;
  return make_prediction(model, *best, std::move(scores));
}

// Per-class K-nearest pools with fuzzy inverse-distance weighting:
//   raw_c = sum_{j in N_c} u_j(c) * d_j^(-2/(m-1)),  score_c = raw_c / sum raw.
// Kept in one place so alternative readings of the combination can be swapped in.
Prediction fknne_from(const FitModel& model, std::span<const double> dist) {
  const auto pools = class_pools(model, dist);
  const std::size_t nc = pools.size();
  std::vector<std::size_t> all;
  for (const auto& pool : pools) all.insert(all.end(), pool.begin(), pool.end());

  if (auto exact = exact_match_scores(model, dist, all)) {
    const auto label = first_max(*exact);
    return make_prediction(model, label, std::move(*exact));
  }
  double d_min = dist[all.front()];
  for (auto j : all) d_min = std::min(d_min, dist[j]);

  std::vector<double> scores(nc, 0.0);
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    for (auto j : pools[c]) scores[c] += model.membership(j)[c] * fuzzy_weight(dist[j], d_min, model.config().m);
    total += scores[c];
  }
  for (auto& s : scores) s /= total;
  const auto label = first_max(scores);
  return make_prediction(model, label, std::move(scores));
}

std::vector<double> distances_to(const FitModel& model, std::span<const double> prepared) {
  std::vector<double> dist(model.size());
  for (std::size_t j = 0; j < model.size(); ++j) dist[j] = kernels::euclidean(prepared, model.point(j));
  return dist;
}

Prediction predict_from(const FitModel& model, std::span<const double> dist) {
  switch (model.config().kind) {
    case Kind::knn: return knn_from(model, dist);
    case Kind::fknn: return fknn_from(model, dist);
    case Kind::knne: return knne_from(model, dist);
    case Kind::fknne: return fknne_from(model, dist);
  }
  throw Error("unknown classifier kind");
}

}  // namespace

std::span<const double> FitModel::membership(std::size_t j) const {
  const auto nc = classes().size();
  return std::span<const double>(memberships_).subspan(j * nc, nc);
}

std::span<const double> FitModel::point(std::size_t j) const {
  return std::span<const double>(points_).subspan(j * dim(), dim());
}

std::vector<double> FitModel::prepare(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw Error("query has " + std::to_string(x.size()) + " features, model expects " + std::to_string(dim()));
  }
  std::vector<double> out(x.begin(), x.end());
  if (!norm_params_.empty()) {
    for (std::size_t f = 0; f < out.size(); ++f) {
      const auto [lo, hi] = norm_params_[f];
      out[f] = hi > lo ? (out[f] - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

FitModel fit(const Dataset& data, const ClassifierConfig& cfg, Execution exec) {
  cfg.validate();
  if (data.empty()) throw Error("cannot fit on an empty dataset");
  if (data.dim() == 0) throw Error("cannot fit on a dataset without features");

  FitModel model;
  model.config_ = cfg;
  model.training_ = data;
  const std::size_t n = data.size(), dim = data.dim(), nc = data.classes().size();

  if (cfg.normalize) {
    model.norm_params_.resize(dim);
    for (std::size_t f = 0; f < dim; ++f) {
      double lo = data.sample(0).features[f], hi = lo;
      for (const auto& s : data.samples()) {
        lo = std::min(lo, s.features[f]);
        hi = std::max(hi, s.features[f]);
      }
      model.norm_params_[f] = {lo, hi};
    }
  }
  model.points_.reserve(n * dim);
  for (const auto& s : data.samples()) {
    const auto row = model.prepare(s.features);
    model.points_.insert(model.points_.end(), row.begin(), row.end());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return data.sample(a).id < data.sample(b).id; });
  model.id_rank_.resize(n);
  for (std::size_t r = 0; r < n; ++r) model.id_rank_[order[r]] = r;

  model.memberships_.assign(n * nc, 0.0);
  for (std::size_t j = 0; j < n; ++j) model.memberships_[j * nc + data.label_index(j)] = 1.0;

  if (cfg.init == Init::keller) {
    int k_init = cfg.effective_k_init();
    if (static_cast<std::size_t>(k_init) >= n) {
      k_init = static_cast<int>(n) - 1;
      model.k_init_clamped_ = true;
    }
    model.k_init_used_ = k_init;
    if (k_init > 0) {
      const auto dist = kernels::distance_matrix(model.points_, model.points_, dim, exec);
      const auto row_memberships = [&](std::ptrdiff_t jj) {
        const auto j = static_cast<std::size_t>(jj);
        const auto row = std::span<const double>(dist).subspan(j * n, n);
        const auto nb = nearest(model, row, static_cast<std::size_t>(k_init), [&](std::size_t i) { return i != j; });
        std::vector<double> counts(nc, 0.0);
        for (auto i : nb) counts[data.label_index(i)] += 1.0;
        for (std::size_t c = 0; c < nc; ++c) {
          const double share = 0.49 * counts[c] / static_cast<double>(k_init);
          model.memberships_[j * nc + c] = c == data.label_index(j) ? 0.51 + share : share;
        }
      };
      const auto rows = static_cast<std::ptrdiff_t>(n);
      if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < rows; ++j) row_memberships(j);
      } else {
        for (std::ptrdiff_t j = 0; j < rows; ++j) row_memberships(j);
      }
    }
  }
  return model;
}

std::vector<Neighbor> kneighbors(const FitModel& model, std::span<const double> x, int k,
                                 std::optional<std::size_t> class_filter) {
  if (k < 1) throw Error("k must be >= 1");
  if (class_filter && *class_filter >= model.classes().size()) throw Error("class filter out of range");
  const auto dist = distances_to(model, model.prepare(x));
  const auto idx = class_filter ? nearest_in_class(model, dist, static_cast<std::size_t>(k), *class_filter)
                                : nearest_all(model, dist, static_cast<std::size_t>(k));
  std::vector<Neighbor> out;
  out.reserve(idx.size());
  for (auto j : idx) out.push_back(Neighbor{j, model.training().sample(j).id, dist[j]});
  return out;
}

namespace {

std::vector<double> values_in_schema(const FitModel& model, const FeatureVector& x) {
  if (x.names != model.training().feature_names()) throw Error("query feature names do not match the model schema");
  return x.values;
}

}  // namespace

std::vector<Neighbor> kneighbors(const FitModel& model, const FeatureVector& x, int k,
                                 const std::optional<std::string>& class_filter) {
  std::optional<std::size_t> filter;
  if (class_filter) {
    filter = model.training().class_index(*class_filter);
    if (!filter) throw Error("unknown class '" + *class_filter + "'");
  }
  return kneighbors(model, values_in_schema(model, x), k, filter);
}

Prediction predict_knn(const FitModel& model, std::span<const double> x) {
  return knn_from(model, distances_to(model, model.prepare(x)));
}

Prediction predict_fknn(const FitModel& model, std::span<const double> x) {
  return fknn_from(model, distances_to(model, model.prepare(x)));
}

Prediction predict_knne(const FitModel& model, std::span<const double> x) {
  return knne_from(model, distances_to(model, model.prepare(x)));
}

Prediction predict_fknne(const FitModel& model, std::span<const double> x) {
  return fknne_from(model, distances_to(model, model.prepare(x)));
}

Prediction predict(const FitModel& model, std::span<const double> x) {
  return predict_from(model, distances_to(model, model.prepare(x)));
}

Prediction predict(const FitModel& model, const FeatureVector& x) { return predict(model, values_in_schema(model, x)); }

std::vector<Prediction> predict_batch(const FitModel& model, std::span<const std::vector<double>> queries,
                                      Execution exec) {
  std::vector<double> prepared;
  prepared.reserve(queries.size() * model.dim());
  for (const auto& q : queries) {
    const auto row = model.prepare(q);
    prepared.insert(prepared.end(), row.begin(), row.end());
  }
  const auto dist = kernels::distance_matrix(prepared, model.points(), model.dim(), exec);
  const std::size_t n = model.size();
  std::vector<Prediction> out(queries.size());
  const auto nq = static_cast<std::ptrdiff_t>(queries.size());
  const auto one = [&](std::ptrdiff_t q) {
    out[static_cast<std::size_t>(q)] = predict_from(model, std::span<const double>(dist).subspan(q * n, n));
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t q = 0; q < nq; ++q) one(q);
  } else {
    for (std::ptrdiff_t q = 0; q < nq; ++q) one(q);
  }
  return out;
}

}  // namespace fknne
