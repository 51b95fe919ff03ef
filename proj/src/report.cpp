#include "fknne/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "fknne/csv.hpp"
#include "fknne/error.hpp"

namespace fknne {
namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json counts_json(const ConfusionCounts& c) { return json{{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}}; }

Protocol::Kind protocol_kind(const std::string& name) {
  if (name.starts_with("kfold")) return Protocol::Kind::kfold;
  if (name == "loocv") return Protocol::Kind::loocv;
  if (name.starts_with("holdout")) return Protocol::Kind::holdout;
  throw Error("unknown protocol '" + name + "'");
}

}  // namespace

json report_to_json(const EvaluationReport& r) {
  json pooled = counts_json(r.pooled_counts);
  pooled["sensitivity"] = r.pooled.sensitivity;
  pooled["specificity"] = r.pooled.specificity;
  pooled["accuracy"] = r.pooled.accuracy;
  pooled["auc"] = r.auc;

  json folds = json::array();
  for (const auto& f : r.folds) {
    json fj{{"index", f.index}, {"n_test", f.counts.total()}};
    fj.update(counts_json(f.counts));
    fj["sensitivity"] = optional_number(f.sensitivity);
    fj["specificity"] = optional_number(f.specificity);
    fj["accuracy"] = f.accuracy;
    fj["auc"] = optional_number(f.auc);
    folds.push_back(std::move(fj));
  }

  return json{{"method", to_string(r.config.kind)},
              {"k", r.config.k},
              {"m", r.config.m},
              {"init", to_string(r.config.init)},
              {"k_init", r.config.effective_k_init()},
              {"normalize", r.config.normalize},
              {"protocol", r.protocol.name()},
              {"seed", r.protocol.seed},
              {"positive_class", r.positive_class},
              {"features", r.features},
              {"n_samples", r.n_samples},
              {"sensitivity", r.pooled.sensitivity},
              {"specificity", r.pooled.specificity},
              {"accuracy", r.pooled.accuracy},
              {"auc", r.auc},
              {"pooled", std::move(pooled)},
              {"averaged",
               {{"sensitivity", optional_number(r.averaged.sensitivity)},
                {"specificity", optional_number(r.averaged.specificity)},
                {"accuracy", r.averaged.accuracy},
                {"auc", optional_number(r.averaged.auc)}}},
              {"folds", std::move(folds)}};
}

json comparison_to_json(const ComparisonTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    rows.push_back(json{{"method", row.method},
                        {"kind", to_string(row.config.kind)},
                        {"k", row.config.k},
                        {"m", row.config.m},
                        {"init", to_string(row.config.init)},
                        {"k_init", row.config.k_init ? json(*row.config.k_init) : json(nullptr)},
                        {"normalize", row.config.normalize},
                        {"sensitivity", row.sensitivity},
                        {"specificity", row.specificity},
                        {"accuracy", row.accuracy},
                        {"auc", row.auc}});
  }
  return json{{"protocol", t.protocol.name()},
              {"folds", t.protocol.folds},
              {"fraction", t.protocol.fraction},
              {"seed", t.protocol.seed},
              {"positive_class", t.positive_class},
              {"columns", {"method", "sensitivity", "specificity", "accuracy", "auc"}},
              {"rows", std::move(rows)}};
}

ComparisonTable comparison_from_json(const json& j) {
  try {
    ComparisonTable t;
    t.protocol.kind = protocol_kind(j.at("protocol").get<std::string>());
    t.protocol.folds = j.at("folds").get<int>();
    t.protocol.fraction = j.at("fraction").get<double>();
    t.protocol.seed = j.at("seed").get<std::uint64_t>();
    t.positive_class = j.at("positive_class").get<std::string>();
    for (const auto& r : j.at("rows")) {
      ComparisonRow row;
      row.method = r.at("method").get<std::string>();
      row.config.kind = parse_kind(r.at("kind").get<std::string>());
      row.config.k = r.at("k").get<int>();
      row.config.m = r.at("m").get<double>();
      row.config.init = parse_init(r.at("init").get<std::string>());
      if (!r.at("k_init").is_null()) row.config.k_init = r.at("k_init").get<int>();
      row.config.normalize = r.at("normalize").get<bool>();
      row.sensitivity = r.at("sensitivity").get<double>();
      row.specificity = r.at("specificity").get<double>();
      row.accuracy = r.at("accuracy").get<double>();
      row.auc = r.at("auc").get<double>();
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed comparison JSON: ") + e.what());
  }
}

std::string render_table(const ComparisonTable& t) {
  std::size_t width = 6;
  for (const auto& row : t.rows) width = std::max(width, row.method.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "method" << std::right;
  for (const char* col : {"sensitivity", "specificity", "accuracy", "auc"}) out << "  " << std::setw(11) << col;
  out << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& row : t.rows) {
    out << std::left << std::setw(static_cast<int>(width)) << row.method << std::right;
    for (double v : {row.sensitivity, row.specificity, row.accuracy, row.auc}) out << "  " << std::setw(11) << v;
    out << '\n';
  }
  return out.str();
}

std::string roc_to_csv(const RocCurve& roc) {
  std::string out = "threshold,fpr,tpr\n";
  for (const auto& p : roc.points) {
    out += std::isinf(p.threshold) ? std::string(p.threshold > 0 ? "inf" : "-inf") : format_double(p.threshold);
    out += ',' + format_double(p.fpr) + ',' + format_double(p.tpr) + '\n';
  }
  return out;
}

}  // namespace fknne
