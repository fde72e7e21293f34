#pragma once

#include <string>
#include <vector>

namespace nhtb {

const std::vector<std::string>& recipe_names();

/// Absolute path of a shipped recipe config; throws ValidationError for
/// names outside the shipped set. Search order: --recipes-dir override,
/// NHTB_RECIPES env var, compiled-in source path.
std::string recipe_path(const std::string& name, const std::string& override_dir = "");

/// Subcommand a recipe runs under (sweep or phase-diagram).
std::string recipe_command(const std::string& name);

}  // namespace nhtb
