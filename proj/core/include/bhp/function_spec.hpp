#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bhp/boolean_function.hpp"

namespace bhp {

/// A Boolean function as read from a function-spec document, plus a short
/// label for reports.
struct FunctionSpec {
  std::string label;
  BooleanFunction function;
  std::optional<SymmetricSpec> symmetric;
};

/// Accepted shapes:
///   {"kind":"truth_table","t":T,"values":[+-1, ...]}          (row encoding)
///   {"kind":"symmetric","t":T,"thresholds":[...],"leading_sign":+-1}
///   {"kind":"named","name":N,"t":T}   N in parity|and|or|majority|nae|dictator
/// Named extras: "index" (dictator, 1-based) and "convention"
/// ("minus_on_equal" default, or "plus_on_equal") for nae.
/// Throws InvalidArgument on anything else.
FunctionSpec parse_function_spec(const nlohmann::json& doc);
FunctionSpec load_function_spec(const std::filesystem::path& path);
FunctionSpec named_function(std::string_view name, int t);
FunctionSpec symmetric_function(const SymmetricSpec& spec);

nlohmann::json truth_table_json(const BooleanFunction& f);
nlohmann::json symmetric_json(const SymmetricSpec& spec);

}  // namespace bhp
