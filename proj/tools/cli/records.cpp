#include "records.hpp"

#include <bhp/error.hpp>

#include <cmath>
#include <cstdio>

namespace bhp::cli {

RecordWriter::RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == Format::kText) throw InvalidArgument("records support csv and jsonl only");
}

void RecordWriter::write(const Record& record) {
  if (format_ == Format::kJsonl) {
    Record row;
    for (const auto& c : columns_) row[c] = record.contains(c) ? record.at(c) : Record(nullptr);
    out_ << row.dump() << '\n';
    return;
  }
  if (!header_done_) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
    header_done_ = true;
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out_ << (i ? "," : "");
    if (record.contains(columns_[i])) out_ << csv_cell(record.at(columns_[i]));
  }
  out_ << '\n';
}

std::string csv_cell(const nlohmann::ordered_json& value) {
  if (value.is_null()) return "";
  if (value.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value.get<double>());
    return buf;
  }
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Interval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace bhp::cli
