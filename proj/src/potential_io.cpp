#include <json.hpp>

#include "levinson/errors.hpp"
#include "levinson/potential.hpp"

namespace levinson {

using nlohmann::json;

// nlohmann writes doubles in shortest round-trip form, so every number field
// reads back bit-identical.

std::string to_json_text(const PotentialDescriptor& d) {
  json j;
  j["family"] = d.family;
  j["params"] = json::object();
  for (const auto& [k, v] : d.params) j["params"][k] = v;
  j["x0"] = d.x0;
  j["tail"] = d.tail;
  if (!d.table.empty()) j["table"] = d.table;
  return j.dump(2);
}

PotentialDescriptor descriptor_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("potential descriptor is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("potential descriptor must be an object");
  try {
    PotentialDescriptor d;
    d.family = j.at("family").get<std::string>();
    if (j.contains("params"))
      for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
        d.params[it.key()] = it.value().get<double>();
    d.x0 = j.at("x0").get<double>();
    if (j.contains("tail")) d.tail = j["tail"].get<std::string>();
    if (j.contains("table")) d.table = j["table"].get<std::vector<double>>();
    return d;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad potential descriptor: ") + e.what());
  }
}

} // namespace levinson
