#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhtb/model.hpp"
#include "nhtb/realspace.hpp"
#include "nhtb/sweep.hpp"

namespace nhtb {

/// One entry of the config schema; --help and validation are both generated
/// from this table, so undocumented keys cannot exist.
struct ConfigKey {
  std::string section;
  std::string key;
  std::string type;  // "string" | "real" | "int" | "bool"
  std::string default_value;
  std::string description;
};

const std::vector<ConfigKey>& config_schema();

struct RunConfig {
  ModelSpec model;
  double transverse_k = 0.0;

  int n_cells = 100;
  int n_p = 100;
  int n_phi = 512;
  int n_momentum = 512;
  Termination termination = Termination::FullCells;
  int window_cells = 0;
  int p_window_cells = 0;
  double threshold = 0.5;
  double admissibility_tol = 1e-6;
  int workers = 0;
  WindingEstimator estimator = WindingEstimator::Biorthogonal;

  SweepParameter sweep_parameter = SweepParameter::T1;
  double sweep_start = 0.0;
  double sweep_stop = 1.0;
  int sweep_points = 2;

  double loop_center_kx = 0.0;
  double loop_center_ky = 0.0;
  double loop_radius = 0.1;
  int loop_points = 256;

  std::string phase_mode = "obc";  // "pbc" | "obc"
  double grid_gamma_min = 0.0;
  double grid_gamma_max = 4.0;
  int grid_gamma_points = 64;
  double grid_t1_min = 0.0625;
  double grid_t1_max = 2.0;
  int grid_t1_points = 64;

  std::string out_dir = ".";
  bool write_csv = true;
  bool write_json = true;
  bool write_svg = false;
  bool write_eigenvectors = false;
};

/// Raw section.key -> value pairs in file order.
using ConfigValues = std::map<std::string, std::string>;

/// INI-style parser: [section] headers, key = value lines, # comments.
/// Unknown or ill-typed keys collect into errors (all of them, not the first).
ConfigValues parse_config_file(const std::string& path, std::vector<std::string>& errors);
ConfigValues parse_config_text(const std::string& text, std::vector<std::string>& errors);

RunConfig build_run_config(const ConfigValues& values, std::vector<std::string>& errors);

/// Serialized section.key = value lines for the manifest round trip.
std::string render_config(const ConfigValues& values);

std::string config_help_text();

}  // namespace nhtb
