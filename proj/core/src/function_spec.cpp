#include "bhp/function_spec.hpp"

#include <fstream>

#include "bhp/error.hpp"

namespace bhp {
namespace {

using nlohmann::json;

int read_arity(const json& doc) {
  if (!doc.contains("t") || !doc["t"].is_number_integer()) {
    throw InvalidArgument("function spec: missing integer field 't'");
  }
  return doc["t"].get<int>();
}

std::string thresholds_label(const SymmetricSpec& spec) {
  std::string out = "sym" + std::to_string(spec.t) + "[";
  for (std::size_t k = 0; k < spec.thresholds.size(); ++k) {
    out += (k ? "," : "") + std::to_string(spec.thresholds[k]);
  }
  return out + (spec.leading_sign > 0 ? "]+" : "]-");
}

}  // namespace

FunctionSpec symmetric_function(const SymmetricSpec& spec) {
  return {thresholds_label(spec), make_symmetric(spec), spec};
}

FunctionSpec named_function(std::string_view name, int t) {
  BooleanFunction::check_arity(t);
  const std::string label = std::string(name) + std::to_string(t);
  BooleanFunction f = [&] {
    if (name == "parity") return parity(t);
    if (name == "and") return and_function(t);
    if (name == "or") return or_function(t);
    if (name == "majority") return majority(t);
    if (name == "nae") return nae(t);
    if (name == "dictator") return dictator(t);
    throw InvalidArgument("unknown named function '" + std::string(name) + "'");
  }();
  auto sym = symmetric_spec_of(f);
  return {label, std::move(f), std::move(sym)};
}

FunctionSpec parse_function_spec(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InvalidArgument("function spec: expected an object with a string 'kind'");
  }
  const auto kind = doc["kind"].get<std::string>();
  const int t = read_arity(doc);

  try {
    if (kind == "truth_table") {
      const auto values = doc.at("values").get<std::vector<int>>();
      std::vector<Pm> table(values.begin(), values.end());
      for (int v : values) {
        if (v != 1 && v != -1) throw InvalidArgument("function spec: truth table values must be +-1");
      }
      BooleanFunction f(t, std::move(table));
      auto sym = symmetric_spec_of(f);
      return {"table" + std::to_string(t), std::move(f), std::move(sym)};
    }
    if (kind == "symmetric") {
      SymmetricSpec spec{t, doc.at("thresholds").get<std::vector<int>>(),
                         static_cast<Pm>(doc.value("leading_sign", 1))};
      return symmetric_function(spec);
    }
    if (kind == "named") {
      const auto name = doc.at("name").get<std::string>();
      if (name == "dictator" && doc.contains("index")) {
        const int index = doc["index"].get<int>();
        return {"dictator" + std::to_string(t) + "_" + std::to_string(index), dictator(t, index), std::nullopt};
      }
      if (name == "nae" && doc.value("convention", std::string("minus_on_equal")) == "plus_on_equal") {
        BooleanFunction f = nae(t, NaeConvention::kPlusOnAllEqual);
        auto sym = symmetric_spec_of(f);
        return {"nae" + std::to_string(t) + "+", std::move(f), std::move(sym)};
      }
      return named_function(name, t);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("function spec: ") + e.what());
  }
  throw InvalidArgument("function spec: unknown kind '" + kind + "'");
}

FunctionSpec load_function_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open function spec '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidArgument("function spec '" + path.string() + "': " + e.what());
  }
  return parse_function_spec(doc);
}

json truth_table_json(const BooleanFunction& f) {
  std::vector<int> values(f.table().begin(), f.table().end());
  return {{"kind", "truth_table"}, {"t", f.arity()}, {"values", values}};
}

json symmetric_json(const SymmetricSpec& spec) {
  return {{"kind", "symmetric"}, {"t", spec.t}, {"thresholds", spec.thresholds},
          {"leading_sign", static_cast<int>(spec.leading_sign)}};
}

}  // namespace bhp
