#pragma once

#include <string>

#include "gsvdlink/sim.hpp"

namespace gsvdlink {

/// Parses a key = value experiment description (lines of `key = value`,
/// `#` comments, blank lines). Unknown keys are rejected. See
/// docs in the repository README for the full key list and defaults.
ExperimentConfig parse_config(const std::string& text);

/// Canonical textual form of a config; parse_config(serialize_config(c))
/// reproduces c exactly.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace gsvdlink
