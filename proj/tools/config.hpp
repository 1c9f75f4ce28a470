#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "shearlab/profile.hpp"

namespace shearlab::cli {

using Json = nlohmann::ordered_json;

/// Builds a profile from {"kind": ..., parameters}. Missing parameters take
/// the catalog defaults; unknown keys raise ConfigInvalid.
ProfileFunction parse_profile(const Json& spec);

/// Overlays `given` on `defaults`. Every given key must exist in the defaults
/// and match its type; nested objects are profile specs.
Json merge_params(const Json& given, const Json& defaults);

/// Read-only view of validated experiment parameters.
class Params {
 public:
  explicit Params(Json values) : values_(std::move(values)) {}

  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> nums(const std::string& key) const;
  std::vector<int> ints(const std::string& key) const;
  std::vector<std::string> texts(const std::string& key) const;
  ProfileFunction profile(const std::string& key) const;
  const Json& json() const { return values_; }

 private:
  const Json& at(const std::string& key) const;
  Json values_;
};

}  // namespace shearlab::cli
