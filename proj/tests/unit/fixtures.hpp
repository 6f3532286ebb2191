#pragma once

#include <string>

#include "ppekit/builders.hpp"

inline const ppekit::PdParams kPd{4.0, 1.0, 1.5, 0.9, 0.8, 0.2};

inline std::string config_path(const std::string& name) {
  return std::string(PPEKIT_SOURCE_DIR) + "/configs/" + name;
}
