#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace bhp::cli {

using Record = nlohmann::ordered_json;

/// Writes records with a fixed column list: a CSV header then one row per
/// record, or one JSON object per line. Missing fields become empty cells
/// (CSV) or null (JSON-lines).
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns);

  void write(const Record& record);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
  bool header_done_ = false;
};

/// CSV cell text for a JSON value.
std::string csv_cell(const nlohmann::ordered_json& value);

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for `successes` out of `trials`; default z is the 97.5% normal quantile.
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

}  // namespace bhp::cli
