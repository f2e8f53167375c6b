#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "secacc/analytics.hpp"
#include "secacc/drivers.hpp"
#include "secacc/socmodel.hpp"

namespace secacc {

/// Everything one config document carries: the SoC, driver templates and the
/// software baseline table.
struct Setup {
  soc::SocConfig soc;
  drivers::TemplateSet templates;
  analytics::BaselineModel baseline;
};

/// Built-in setup; configs/default.json is its serialization.
Setup default_setup();

/// `templates` and `baseline` are optional and apply over the built-in values.
Setup load_setup(const nlohmann::json& document);
Setup load_setup(std::string_view text);
inline Setup load_setup(const std::string& text) { return load_setup(std::string_view(text)); }
inline Setup load_setup(const char* text) { return load_setup(std::string_view(text)); }
Setup load_setup_file(const std::string& path);

nlohmann::json to_json(const Setup& setup);

}  // namespace secacc
