// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/model_file.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "pdm/error.hpp"

namespace pdm::io {

namespace {

using Json = nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::ConfigError, message);
}

void only_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto k : allowed) ok = ok || it.key() == k;
    if (!ok) config_error("unknown key '" + it.key() + "' in " + where);
  }
}

const Json& required(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) config_error(std::string("missing key '") + key + "' in " + where);
  return *it;
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = required(obj, key, where);
  if (!v.is_number()) config_error(std::string("'") + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& obj, const char* key, const std::string& where) {
  const Json& v = required(obj, key, where);
  if (!v.is_array()) config_error(std::string("'") + key + "' in " + where + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) config_error(std::string("'") + key + "' in " + where + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// Single-key object {"name": {...}}.
std::pair<std::string, const Json*> tagged(const Json& v, const std::string& where) {
  if (!v.is_object() || v.size() != 1) config_error(where + " must be an object with one key");
  return {v.begin().key(), &v.begin().value()};
}

AngularMassProfile parse_profile(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "flat") return AngularMassProfile::flat();
    if (s == "cos2") return AngularMassProfile::cos_squared();
    config_error("unknown angular profile '" + s + "'");
  }
  const auto [name, body] = tagged(v, "f");
  if (name != "tabulated") config_error("unknown angular profile '" + name + "'");
  only_keys(*body, {"phi", "f", "fp", "fpp"}, "f.tabulated");
  return AngularMassProfile::tabulated({numbers(*body, "phi", "f.tabulated"),
                                        numbers(*body, "f", "f.tabulated"),
                                        numbers(*body, "fp", "f.tabulated"),
                                        numbers(*body, "fpp", "f.tabulated")});
}

RadialPotential parse_potential(const Json& v) {
  const auto [name, body] = tagged(v, "potential");
  const std::string where = "potential." + name;
  if (name == "power_well") {
    only_keys(*body, {"v0", "k"}, where);
    const Json& k = required(*body, "k", where);
    if (!k.is_number_integer()) config_error("'k' in " + where + " must be an integer");
    return RadialPotential::power_well(number(*body, "v0", where), k.get<int>());
  }
  if (name == "coulomb_like") {
    only_keys(*body, {"omega"}, where);
    return RadialPotential::coulomb_like(number(*body, "omega", where));
  }
  if (name == "oscillator_like") {
    only_keys(*body, {"a", "d"}, where);
    return RadialPotential::oscillator_like(number(*body, "a", where), number(*body, "d", where));
  }
  if (name == "tabulated") {
    only_keys(*body, {"rho", "v"}, where);
    return RadialPotential::tabulated({numbers(*body, "rho", where), numbers(*body, "v", where)});
  }
  config_error("unknown potential '" + name + "'");
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    config_error(std::string("malformed model JSON: ") + e.what());
  }
  only_keys(doc, {"f", "potential", "ordering", "lambda"}, "model");
  const Json& ordering = required(doc, "ordering", "model");
  if (!ordering.is_string()) config_error("'ordering' must be a string");

  ModelSpec spec{SeparableModel{parse_profile(required(doc, "f", "model")),
                                parse_potential(required(doc, "potential", "model")),
                                parse_ordering(ordering.get<std::string>())},
                 std::nullopt};
  if (doc.contains("lambda")) spec.lambda = number(doc, "lambda", "model");
  return spec;
}

ModelSpec load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace pdm::io
