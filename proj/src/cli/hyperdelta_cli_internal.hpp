#pragma once

#include <string>
#include <vector>

#include "hyperdelta/cli.hpp"

namespace hyperdelta::cli {

/// Uniform grid from <prefix>_min, <prefix>_max and <prefix>_steps; one point gives the minimum.
std::vector<double> linspace(const RunConfig& config, const std::string& prefix);

}  // namespace hyperdelta::cli
