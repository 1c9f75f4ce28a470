#include "config.hpp"

#include <map>
#include <set>

#include "shearlab/errors.hpp"

namespace shearlab::cli {

namespace {

const std::map<std::string, std::set<std::string>> kProfileKeys = {
    {"constant", {"value"}},
    {"trig", {"mode", "phase", "amplitude", "offset"}},
    {"cusp", {"alpha", "radius"}},
    {"step", {"below", "above", "jump"}},
    {"sin_inverse", {"radius"}},
    {"piecewise_constant", {"breakpoints", "levels"}},
    {"sampled", {"values", "order"}},
};

double number_or(const Json& spec, const char* key, double fallback) {
  if (!spec.contains(key)) return fallback;
  if (!spec[key].is_number()) throw ConfigInvalid(std::string("profile key '") + key + "' must be a number");
  return spec[key].get<double>();
}

int integer_or(const Json& spec, const char* key, int fallback) {
  if (!spec.contains(key)) return fallback;
  if (!spec[key].is_number_integer()) {
    throw ConfigInvalid(std::string("profile key '") + key + "' must be an integer");
  }
  return spec[key].get<int>();
}

std::vector<double> numbers(const Json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_array()) {
    throw ConfigInvalid(std::string("profile key '") + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : spec[key]) {
    if (!v.is_number()) throw ConfigInvalid(std::string("profile key '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Integers are accepted where the default is a float, not the reverse.
bool compatible(const Json& given, const Json& def) {
  if (def.is_boolean()) return given.is_boolean();
  if (def.is_number_integer()) return given.is_number_integer();
  if (def.is_number()) return given.is_number();
  if (def.is_string()) return given.is_string();
  if (def.is_array()) {
    if (!given.is_array()) return false;
    if (def.empty()) return true;
    for (const auto& g : given) {
      if (!compatible(g, def.front())) return false;
    }
    return true;
  }
  if (def.is_object()) return given.is_object();
  return false;
}

}  // namespace

ProfileFunction parse_profile(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw ConfigInvalid("profile spec needs a string 'kind'");
  }
  const std::string kind = spec["kind"].get<std::string>();
  const auto allowed = kProfileKeys.find(kind);
  if (allowed == kProfileKeys.end()) throw ConfigInvalid("unknown profile kind '" + kind + "'");
  for (const auto& [key, value] : spec.items()) {
    if (key != "kind" && !allowed->second.count(key)) {
      throw ConfigInvalid("unknown key '" + key + "' for profile kind '" + kind + "'");
    }
  }
  try {
    if (kind == "constant") return ProfileFunction::constant(number_or(spec, "value", 0.0));
    if (kind == "trig") {
      return ProfileFunction::trig(integer_or(spec, "mode", 1), number_or(spec, "phase", 0.0),
                                   number_or(spec, "amplitude", 1.0), number_or(spec, "offset", 0.0));
    }
    if (kind == "cusp") {
      return ProfileFunction::cusp(number_or(spec, "alpha", 0.5), number_or(spec, "radius", 0.25));
    }
    if (kind == "step") {
      return ProfileFunction::step(number_or(spec, "below", 1.0), number_or(spec, "above", 0.0),
                                   number_or(spec, "jump", 0.5));
    }
    if (kind == "sin_inverse") return ProfileFunction::sin_inverse(number_or(spec, "radius", 0.25));
    if (kind == "piecewise_constant") {
      return ProfileFunction::piecewise_constant(numbers(spec, "breakpoints"), numbers(spec, "levels"));
    }
    return ProfileFunction::sampled(numbers(spec, "values"), integer_or(spec, "order", 1));
  } catch (const InvalidParameters& e) {
    throw ConfigInvalid(e.what());
  }
}

Json merge_params(const Json& given, const Json& defaults) {
  if (!given.is_object()) throw ConfigInvalid("'params' must be an object");
  Json out = defaults;
  for (const auto& [key, value] : given.items()) {
    if (!defaults.contains(key)) throw ConfigInvalid("unknown parameter '" + key + "'");
    if (!compatible(value, defaults[key])) {
      throw ConfigInvalid("parameter '" + key + "' has the wrong type");
    }
    out[key] = value;
  }
  for (const auto& [key, value] : out.items()) {
    if (value.is_object()) parse_profile(value);
  }
  return out;
}

const Json& Params::at(const std::string& key) const {
  if (!values_.contains(key)) throw ConfigInvalid("missing parameter '" + key + "'");
  return values_[key];
}

double Params::num(const std::string& key) const { return at(key).get<double>(); }
int Params::integer(const std::string& key) const { return at(key).get<int>(); }
bool Params::flag(const std::string& key) const { return at(key).get<bool>(); }
std::string Params::text(const std::string& key) const { return at(key).get<std::string>(); }
std::vector<double> Params::nums(const std::string& key) const {
  return at(key).get<std::vector<double>>();
}
std::vector<int> Params::ints(const std::string& key) const { return at(key).get<std::vector<int>>(); }
std::vector<std::string> Params::texts(const std::string& key) const {
  return at(key).get<std::vector<std::string>>();
}
ProfileFunction Params::profile(const std::string& key) const { return parse_profile(at(key)); }

}  // namespace shearlab::cli
