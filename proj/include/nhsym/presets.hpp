#pragma once

#include <string>
#include <vector>

#include "nhsym/operators.hpp"

namespace nhsym {

std::vector<std::string> preset_names();
// Throws std::invalid_argument naming the known presets.
ModelSpec preset(const std::string& name);

}  // namespace nhsym
