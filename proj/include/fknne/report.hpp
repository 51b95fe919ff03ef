#pragma once

#include <string>

#include <json.hpp>

#include "fknne/metrics.hpp"
#include "fknne/validation.hpp"

namespace fknne {

/// Keys: method, k, m, init, k_init, normalize, protocol, seed, positive_class,
/// features, n_samples, sensitivity, specificity, accuracy, auc, pooled,
/// averaged, folds. The top-level rates are the pooled ones.
nlohmann::ordered_json report_to_json(const EvaluationReport& report);

nlohmann::ordered_json comparison_to_json(const ComparisonTable& table);
ComparisonTable comparison_from_json(const nlohmann::ordered_json& j);

/// Aligned text table: method, sensitivity, specificity, accuracy, auc.
std::string render_table(const ComparisonTable& table);

/// "threshold,fpr,tpr" with one line per ROC point; the origin threshold is "inf".
std::string roc_to_csv(const RocCurve& roc);

}  // namespace fknne
