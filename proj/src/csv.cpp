#include "fknne/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "fknne/error.hpp"

namespace fknne {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;       // inside a quoted field
  bool was_quoted = false;   // current field started with a quote
  bool record_open = false;  // any character consumed for the current record

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  const auto end_record = [&] {
    end_field();
    // A bare blank line carries no data.
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    record_open = true;
    if (c == '"') {
      if (!field.empty() || was_quoted) throw Error("CSV: stray quote inside an unquoted field");
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
    } else {
      if (was_quoted) throw Error("CSV: characters after closing quote");
      field.push_back(c);
    }
  }
  if (quoted) throw Error("CSV: unterminated quoted field");
  if (record_open) end_record();
  return records;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string write_feature_csv(const std::vector<std::string>& names, const std::vector<FeatureRow>& rows) {
  std::string out = "id,label";
  for (const auto& n : names) out += ',' + csv_field(n);
  out += '\n';
  for (const auto& row : rows) {
    if (row.features.names != names) throw Error("feature row '" + row.id + "' does not match the CSV schema");
    out += csv_field(row.id) + ',' + csv_field(row.label);
    for (double v : row.features.values) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string write_feature_csv(const Dataset& data) {
  std::vector<FeatureRow> rows;
  for (const auto& s : data.samples()) rows.push_back(FeatureRow{s.id, s.label, {data.feature_names(), s.features}});
  return write_feature_csv(data.feature_names(), rows);
}

Dataset read_feature_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw Error("feature CSV is empty");
  const auto& header = records.front();
  if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
    throw Error("feature CSV header must start with id,label and name at least one feature");
  }
  std::vector<std::string> names(header.begin() + 2, header.end());
  std::vector<Sample> samples;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error("feature CSV record " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                  " fields, header has " + std::to_string(header.size()));
    }
    Sample s{rec[0], rec[1], {}};
    if (s.id.empty()) throw Error("feature CSV record " + std::to_string(r + 1) + " has an empty id");
    for (std::size_t f = 2; f < rec.size(); ++f) {
      try {
        s.features.push_back(parse_double(rec[f]));
      } catch (const Error& e) {
        throw Error("feature CSV record " + std::to_string(r + 1) + ", column '" + header[f] + "': " + e.what());
      }
    }
    samples.push_back(std::move(s));
  }
  return Dataset::from_samples(std::move(names), std::move(samples));
}

}  // namespace fknne
