#include "nhtb/recipes.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "nhtb/model.hpp"

namespace nhtb {

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
                                                 "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
  return names;
}

std::string recipe_path(const std::string& name, const std::string& override_dir) {
  const auto& names = recipe_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ValidationError("unknown recipe: " + name);

  std::vector<std::string> dirs;
  if (!override_dir.empty()) dirs.push_back(override_dir);
  if (const char* env = std::getenv("NHTB_RECIPES")) dirs.push_back(env);
  dirs.push_back(NHTB_RECIPE_DIR);

  for (const auto& dir : dirs) {
    const std::filesystem::path p = std::filesystem::path(dir) / (name + ".cfg");
    if (std::filesystem::exists(p)) return p.string();
  }
  throw ValidationError("recipe file for '" + name + "' not found in any recipe directory");
}

std::string recipe_command(const std::string& name) {
  return name.rfind("fig4", 0) == 0 ? "phase-diagram" : "sweep";
}

}  // namespace nhtb
