#include "fknne/texture.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fknne/error.hpp"

namespace fknne {
namespace {

// -x ln x with 0 ln 0 = 0.
double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

int texture_levels(const GrayImage& img) {
  const int levels = img.max_val + 1;
  if (levels < 2 || levels > kMaxTextureLevels) {
    throw Error("texture matrices need 2.." + std::to_string(kMaxTextureLevels) + " gray levels, image has " +
                std::to_string(levels) + "; quantize first");
  }
  return levels;
}

void require_nonzero(Offset o) {
  if (o.dx == 0 && o.dy == 0) throw Error("pixel offset must be non-zero");
}

template <typename Visit>
std::size_t for_each_pair(const GrayImage& img, Offset o, Visit visit) {
  std::size_t pairs = 0;
  const int y_begin = std::max(0, -o.dy);
  const int y_end = std::min(img.height, img.height - o.dy);
  const int x_begin = std::max(0, -o.dx);
  const int x_end = std::min(img.width, img.width - o.dx);
  for (int y = y_begin; y < y_end; ++y) {
    for (int x = x_begin; x < x_end; ++x) {
      visit(img.at(x, y), img.at(x + o.dx, y + o.dy));
      ++pairs;
    }
  }
  return pairs;
}

FeatureVector named(const std::vector<std::string>& names, std::vector<double> values) {
  FeatureVector fv{names, std::move(values)};
  fv.validate();
  return fv;
}

}  // namespace

double FeatureVector::get(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error("unknown feature '" + name + "'");
  return values[static_cast<std::size_t>(it - names.begin())];
}

void FeatureVector::validate() const {
  if (names.size() != values.size()) throw Error("feature names and values differ in length");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error("duplicate feature name '" + *dup + "'");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error("feature '" + names[i] + "' is not finite");
  }
}

Glcm compute_glcm(const GrayImage& img, Offset offset, bool symmetric) {
  require_nonzero(offset);
  const int levels = texture_levels(img);
  std::vector<double> counts(static_cast<std::size_t>(levels) * levels, 0.0);
  const auto n = static_cast<std::size_t>(levels);
  const std::size_t pairs = for_each_pair(img, offset, [&](int a, int b) {
    counts[a * n + b] += 1.0;
    if (symmetric) counts[b * n + a] += 1.0;
  });
  if (pairs == 0) throw Error("empty co-occurrence: no pixel pairs at this offset");
  const double total = static_cast<double>(symmetric ? 2 * pairs : pairs);
  for (auto& c : counts) c /= total;
  return Glcm{levels, std::move(counts), offset, symmetric};
}

const std::vector<std::string>& haralick_feature_names() {
  static const std::vector<std::string> names = {
      "asm",         "contrast",     "correlation",         "variance",           "idm",
      "sum_average", "sum_variance", "sum_entropy",         "entropy",            "difference_variance",
      "difference_entropy",          "imc1",                "imc2"};
  return names;
}

FeatureVector haralick_features(const Glcm& glcm) {
  const int L = glcm.levels;
  std::vector<double> px(L, 0.0), py(L, 0.0);
  std::vector<double> p_sum(2 * L - 1, 0.0), p_diff(L, 0.0);

  double asm_ = 0.0, contrast = 0.0, idm = 0.0, hxy = 0.0;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const double p = glcm.at(i, j);
      px[i] += p;
      py[j] += p;
      p_sum[i + j] += p;
      p_diff[std::abs(i - j)] += p;
      const double d2 = static_cast<double>((i - j) * (i - j));
      asm_ += p * p;
      contrast += d2 * p;
      idm += p / (1.0 + d2);
      hxy += entropy_term(p);
    }
  }

  double mu_x = 0.0, mu_y = 0.0;
  for (int i = 0; i < L; ++i) {
    mu_x += i * px[i];
    mu_y += i * py[i];
  }
  double var_x = 0.0, var_y = 0.0, hx = 0.0, hy = 0.0;
  for (int i = 0; i < L; ++i) {
    var_x += (i - mu_x) * (i - mu_x) * px[i];
    var_y += (i - mu_y) * (i - mu_y) * py[i];
    hx += entropy_term(px[i]);
    hy += entropy_term(py[i]);
  }

  double cov = 0.0, hxy1 = 0.0, hxy2 = 0.0;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const double p = glcm.at(i, j);
      const double q = px[i] * py[j];
      cov += (i - mu_x) * (j - mu_y) * p;
      if (p > 0.0) hxy1 -= p * std::log(q);
      hxy2 += entropy_term(q);
    }
  }
  const double sd = std::sqrt(var_x) * std::sqrt(var_y);
  const double correlation = sd > 0.0 ? std::clamp(cov / sd, -1.0, 1.0) : 0.0;
  // Mean of both marginal variances, so the value does not depend on which
  // pixel of the pair is the reference.
  const double variance = 0.5 * (var_x + var_y);

  double sum_average = 0.0, sum_entropy = 0.0;
  for (int k = 0; k < 2 * L - 1; ++k) {
    sum_average += k * p_sum[k];
    sum_entropy += entropy_term(p_sum[k]);
  }
  double sum_variance = 0.0;
  for (int k = 0; k < 2 * L - 1; ++k) sum_variance += (k - sum_average) * (k - sum_average) * p_sum[k];

  double diff_mean = 0.0, diff_entropy = 0.0;
  for (int k = 0; k < L; ++k) {
    diff_mean += k * p_diff[k];
    diff_entropy += entropy_term(p_diff[k]);
  }
  double diff_variance = 0.0;
  for (int k = 0; k < L; ++k) diff_variance += (k - diff_mean) * (k - diff_mean) * p_diff[k];

  const double h_max = std::max(hx, hy);
  const double imc1 = h_max > 0.0 ? (hxy - hxy1) / h_max : 0.0;
  const double imc2 = h_max > 0.0 ? std::sqrt(1.0 - std::exp(-2.0 * std::max(0.0, hxy2 - hxy))) : 0.0;

  return named(haralick_feature_names(),
               {asm_, contrast, correlation, variance, idm, sum_average, sum_variance, sum_entropy, hxy,
                diff_variance, diff_entropy, imc1, imc2});
}

Glrlm compute_glrlm(const GrayImage& img, Offset direction) {
  const bool supported = direction == Offset{1, 0} || direction == Offset{0, 1} || direction == Offset{1, 1} ||
                         direction == Offset{1, -1};
  if (!supported) {
    throw Error("unsupported run direction (" + std::to_string(direction.dx) + "," + std::to_string(direction.dy) +
                ")");
  }
  const int levels = texture_levels(img);
  const int max_run = std::max(img.width, img.height);
  Glrlm out{levels, max_run, std::vector<std::int64_t>(static_cast<std::size_t>(levels) * max_run, 0), direction,
            static_cast<std::int64_t>(img.width) * img.height};

  const auto inside = [&](int x, int y) { return x >= 0 && x < img.width && y >= 0 && y < img.height; };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      // Walk each line once, from the pixel whose predecessor is off-image.
      if (inside(x - direction.dx, y - direction.dy)) continue;
      int cx = x, cy = y;
      int level = img.at(cx, cy);
      int length = 0;
      while (inside(cx, cy)) {
        const int g = img.at(cx, cy);
        if (g != level) {
          ++out.r[static_cast<std::size_t>(level) * max_run + (length - 1)];
          level = g;
          length = 0;
        }
        ++length;
        cx += direction.dx;
        cy += direction.dy;
      }
      ++out.r[static_cast<std::size_t>(level) * max_run + (length - 1)];
    }
  }
  return out;
}

const std::vector<std::string>& runlength_feature_names() {
  static const std::vector<std::string> names = {"sre", "lre", "gln", "rln", "rp", "lgre", "hgre"};
  return names;
}

FeatureVector runlength_features(const Glrlm& m) {
  double runs = 0.0, sre = 0.0, lre = 0.0, lgre = 0.0, hgre = 0.0, gln = 0.0;
  std::vector<double> per_length(m.max_run, 0.0);
  for (int g = 0; g < m.levels; ++g) {
    double per_level = 0.0;
    const double g1 = g + 1.0;
    for (int l = 1; l <= m.max_run; ++l) {
      const double c = static_cast<double>(m.count(g, l));
      if (c == 0.0) continue;
      const double l2 = static_cast<double>(l) * l;
      runs += c;
      per_level += c;
      per_length[l - 1] += c;
      sre += c / l2;
      lre += c * l2;
      lgre += c / (g1 * g1);
      hgre += c * g1 * g1;
    }
    gln += per_level * per_level;
  }
  if (runs == 0.0 || m.n_pixels <= 0) throw Error("run-length matrix is empty");
  double rln = 0.0;
  for (double c : per_length) rln += c * c;
  return named(runlength_feature_names(), {sre / runs, lre / runs, gln / runs, rln / runs,
                                           runs / static_cast<double>(m.n_pixels), lgre / runs, hgre / runs});
}

Gldm compute_gldm(const GrayImage& img, Offset offset) {
  require_nonzero(offset);
  const int levels = texture_levels(img);
  std::vector<double> d(levels, 0.0);
  const std::size_t pairs = for_each_pair(img, offset, [&](int a, int b) { d[std::abs(a - b)] += 1.0; });
  if (pairs == 0) throw Error("empty co-occurrence: no pixel pairs at this offset");
  for (auto& v : d) v /= static_cast<double>(pairs);
  return Gldm{levels, std::move(d), offset};
}

const std::vector<std::string>& gldm_feature_names() {
  static const std::vector<std::string> names = {"mean", "contrast", "asm", "entropy", "idm"};
  return names;
}

FeatureVector gldm_features(const Gldm& gldm) {
  double mean = 0.0, contrast = 0.0, asm_ = 0.0, entropy = 0.0, idm = 0.0;
  for (std::size_t k = 0; k < gldm.d.size(); ++k) {
    const double p = gldm.d[k];
    const double kk = static_cast<double>(k);
    mean += kk * p;
    contrast += kk * kk * p;
    asm_ += p * p;
    entropy += entropy_term(p);
    idm += p / (kk * kk + 1.0);
  }
  return named(gldm_feature_names(), {mean, contrast, asm_, entropy, idm});
}

void ExtractionConfig::validate() const {
  if (levels < 2 || levels > kMaxTextureLevels) {
    throw Error("levels must be in [2, " + std::to_string(kMaxTextureLevels) + "], got " + std::to_string(levels));
  }
  if (distance < 1) throw Error("offset distance must be >= 1, got " + std::to_string(distance));
}

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = [] {
    std::vector<std::string> s;
    for (const auto& n : haralick_feature_names()) s.push_back("glcm." + n);
    for (const auto& n : runlength_feature_names()) s.push_back("rl." + n);
    for (const auto& n : gldm_feature_names()) s.push_back("gldm." + n);
    return s;
  }();
  return schema;
}

FeatureVector extract_all(const GrayImage& roi, const ExtractionConfig& cfg) {
  cfg.validate();
  const GrayImage q = cfg.stretch ? stretch_quantize(roi, cfg.levels) : quantize(roi, cfg.levels);

  const auto& schema = feature_schema();
  std::vector<double> sum(schema.size(), 0.0);
  for (const Offset dir : kDirections) {
    const Offset scaled{dir.dx * cfg.distance, dir.dy * cfg.distance};
    const FeatureVector parts[] = {haralick_features(compute_glcm(q, scaled, cfg.symmetric)),
                                   runlength_features(compute_glrlm(q, dir)),
                                   gldm_features(compute_gldm(q, scaled))};
    std::size_t at = 0;
    for (const auto& part : parts) {
      for (double v : part.values) sum[at++] += v;
    }
  }
  for (auto& v : sum) v /= static_cast<double>(kDirections.size());
  return named(schema, std::move(sum));
}

}  // namespace fknne
