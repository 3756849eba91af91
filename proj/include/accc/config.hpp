#pragma once

#include <string>

#include "accc/harness.hpp"

namespace accc {

// Parses the key = value experiment format (# starts a comment, blank lines
// ignored, keys mirror the ExperimentConfig fields). Unknown keys and
// malformed values raise ConfigError with the line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace accc
