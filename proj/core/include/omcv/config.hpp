#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "omcv/params.hpp"

namespace omcv {

// Flat `key = value` files, SI units, `#` comments. Keys are the
// PhysicalParams field names plus `detuning_mode` ("effective" | "bare"),
// `delta_r` and `delta_l`. Unknown or repeated keys are errors; absent keys
// keep the values of `base`.
PhysicalParams parse_config(std::string_view text, const PhysicalParams& base = {});
PhysicalParams load_config(const std::filesystem::path& path, const PhysicalParams& base = {});

// Inverse of parse_config; every key is written.
std::string to_config_text(const PhysicalParams& params);

// Numeric fields addressable by name (config keys and sweep paths).
const std::vector<std::string>& numeric_fields();
double& field_ref(PhysicalParams& params, std::string_view name);
double field_value(const PhysicalParams& params, std::string_view name);

}  // namespace omcv
