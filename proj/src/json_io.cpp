#include "mga/json_io.hpp"

#include <stdexcept>

#include "mga/interval.hpp"

namespace mga {

using nlohmann::json;

Int int_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    if (auto v = parse_int(j.get<std::string>())) return *v;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

json func_to_json(const FuncValue& f) {
  json ex = json::array();
  for (const auto& [k, v] : f.exceptions())
    ex.push_back(json::array({int_to_json(k), int_to_json(v)}));
  return json{{"default", int_to_json(f.default_value())}, {"exceptions", ex}};
}

FuncValue func_from_json(const json& j) {
  if (!j.is_object() || !j.contains("default"))
    throw std::invalid_argument("expected {default, exceptions}, got " + j.dump());
  FuncValue f(int_from_json(j.at("default")));
  if (j.contains("exceptions")) {
    const json& ex = j.at("exceptions");
    if (ex.is_array()) {
      for (const auto& kv : ex) {
        if (!kv.is_array() || kv.size() != 2)
          throw std::invalid_argument("bad exception entry " + kv.dump());
        f.set(int_from_json(kv[0]), int_from_json(kv[1]));
      }
    } else if (ex.is_object()) {
      for (const auto& [k, v] : ex.items()) f.set(int_from_json(json(k)), int_from_json(v));
    } else {
      throw std::invalid_argument("bad exceptions " + ex.dump());
    }
  }
  return f;
}

json model_to_json(const Model& m, const std::vector<Declaration>& decls) {
  json out = json::object();
  for (const auto& d : decls) {
    switch (d.kind) {
      case DeclKind::Int:
        if (auto it = m.ints.find(d.name); it != m.ints.end())
          out[d.name] = int_to_json(it->second);
        break;
      case DeclKind::Bool:
        if (auto it = m.bools.find(d.name); it != m.bools.end()) out[d.name] = it->second;
        break;
      case DeclKind::Array:
      case DeclKind::Function:
        if (auto it = m.funcs.find(d.name); it != m.funcs.end())
          out[d.name] = func_to_json(it->second);
        break;
    }
  }
  return out;
}

Model model_from_json(const json& j, const std::vector<Declaration>& decls) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  Model m;
  for (const auto& d : decls) {
    if (!j.contains(d.name)) continue;
    const json& v = j.at(d.name);
    switch (d.kind) {
      case DeclKind::Int: m.ints[d.name] = int_from_json(v); break;
      case DeclKind::Bool:
        if (!v.is_boolean()) throw std::invalid_argument(d.name + ": expected a boolean");
        m.bools[d.name] = v.get<bool>();
        break;
      case DeclKind::Array:
      case DeclKind::Function: m.funcs[d.name] = func_from_json(v); break;
    }
  }
  return m;
}

json model_to_json(const Model& m) {
  json ints = json::object(), bools = json::object(), funcs = json::object();
  for (const auto& [k, v] : m.ints) ints[k] = int_to_json(v);
  for (const auto& [k, v] : m.bools) bools[k] = v;
  for (const auto& [k, v] : m.funcs) funcs[k] = func_to_json(v);
  return json{{"ints", ints}, {"bools", bools}, {"funcs", funcs}};
}

Model model_from_json(const json& j) {
  Model m;
  for (const auto& [k, v] : j.at("ints").items()) m.ints[k] = int_from_json(v);
  for (const auto& [k, v] : j.at("bools").items()) m.bools[k] = v.get<bool>();
  for (const auto& [k, v] : j.at("funcs").items()) m.funcs[k] = func_from_json(v);
  return m;
}

}  // namespace mga
