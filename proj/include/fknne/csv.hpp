#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fknne/dataset.hpp"
#include "fknne/feature_vector.hpp"

namespace fknne {

/// RFC-4180 reader: quoted fields, doubled quotes, CRLF or LF line endings.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view value);

/// Shortest representation that parses back to the same double; locale independent.
std::string format_double(double value);
double parse_double(std::string_view text);

struct FeatureRow {
  std::string id;
  std::string label;
  FeatureVector features;
};

/// Header "id,label,<names...>", one row per entry in the given order, LF endings.
/// Every row must use exactly `names`.
std::string write_feature_csv(const std::vector<std::string>& names, const std::vector<FeatureRow>& rows);
std::string write_feature_csv(const Dataset& data);

Dataset read_feature_csv(std::string_view text);

}  // namespace fknne
