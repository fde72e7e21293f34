#include "nhtb/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nhtb {

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"model", "variant", "string", "ssh1d",
       "model variant: ssh1d | chern_x_obc | chern_y_obc_a | chern_y_obc_b"},
      {"model", "t1", "real", "1", "intracell hopping t1"},
      {"model", "t2", "real", "1", "intercell hopping t2 (1d chain)"},
      {"model", "t3", "real", "0", "longer-range hopping t3"},
      {"model", "gamma", "real", "0", "non-reciprocity gamma"},
      {"model", "delta_onsite", "real", "0", "onsite (sigma_z) scale"},
      {"model", "delta_stagger", "real", "0", "interchain stagger of the 2d models"},
      {"model", "transverse_k", "real", "0", "fixed transverse momentum for 2d variants"},
      {"numeric", "n_cells", "int", "100", "open-chain cell count for spectra"},
      {"numeric", "n_p", "int", "100", "cell count used for the polarization"},
      {"numeric", "n_phi", "int", "512", "phi grid resolution of the GBZ sweep"},
      {"numeric", "n_momentum", "int", "512", "dense PBC momentum samples"},
      {"numeric", "termination", "string", "full_cells",
       "chain termination: full_cells | broken_cell_a_at_both_ends"},
      {"numeric", "window_cells", "int", "0",
       "classifier window in cells at n_cells; 0 picks max(3, N/20)"},
      {"numeric", "p_window_cells", "int", "0",
       "classifier window in cells at n_p; 0 picks max(3, N/20)"},
      {"numeric", "threshold", "real", "0.5", "edge classification weight threshold in (0,1)"},
      {"numeric", "admissibility_tol", "real", "1e-6", "relative GBZ admissibility tolerance"},
      {"numeric", "workers", "int", "0", "worker threads; 0 = available parallelism"},
      {"numeric", "winding_estimator", "string", "biorthogonal",
       "winding eigenvector pairing: biorthogonal | right_only"},
      {"numeric", "sweep_parameter", "string", "t1", "sweep axis: t1 | gamma | transverse_k"},
      {"numeric", "sweep_start", "real", "0", "sweep axis start"},
      {"numeric", "sweep_stop", "real", "1", "sweep axis stop"},
      {"numeric", "sweep_points", "int", "2", "sweep axis point count"},
      {"numeric", "loop_center_kx", "real", "0", "vorticity loop center kx"},
      {"numeric", "loop_center_ky", "real", "0", "vorticity loop center ky"},
      {"numeric", "loop_radius", "real", "0.1", "vorticity loop radius"},
      {"numeric", "loop_points", "int", "256", "initial vorticity loop samples"},
      {"numeric", "phase_mode", "string", "obc", "phase diagram mode: pbc | obc"},
      {"numeric", "grid_gamma_min", "real", "0", "phase grid gamma start"},
      {"numeric", "grid_gamma_max", "real", "4", "phase grid gamma stop"},
      {"numeric", "grid_gamma_points", "int", "64", "phase grid gamma points"},
      {"numeric", "grid_t1_min", "real", "0.0625", "phase grid t1 start"},
      {"numeric", "grid_t1_max", "real", "2", "phase grid t1 stop"},
      {"numeric", "grid_t1_points", "int", "64", "phase grid t1 points"},
      {"output", "out_dir", "string", ".", "output directory"},
      {"output", "csv", "bool", "true", "write CSV outputs"},
      {"output", "json", "bool", "true", "write the JSON manifest"},
      {"output", "svg", "bool", "false", "write SVG plots"},
      {"output", "eigenvectors", "bool", "false", "include eigenvectors in JSON output"},
  };
  return schema;
}

namespace {

const ConfigKey* find_key(const std::string& full) {
  for (const auto& k : config_schema())
    if (k.section + "." + k.key == full) return &k;
  return nullptr;
}

bool parse_real(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigValues parse_config_text(const std::string& text, std::vector<std::string>& errors) {
  ConfigValues values;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": key outside any [section]");
      continue;
    }
    values[section + "." + key] = value;
  }
  return values;
}

ConfigValues parse_config_file(const std::string& path, std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open config file: " + path);
    return {};
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), errors);
}

RunConfig build_run_config(const ConfigValues& values, std::vector<std::string>& errors) {
  RunConfig cfg;
  for (const auto& [full, value] : values) {
    const ConfigKey* schema_key = find_key(full);
    if (!schema_key) {
      errors.push_back("unknown config key: " + full);
      continue;
    }
    bool ok = true;
    double r = 0.0;
    int i = 0;
    bool b = false;
    if (schema_key->type == "real") ok = parse_real(value, r);
    if (schema_key->type == "int") ok = parse_int(value, i);
    if (schema_key->type == "bool") ok = parse_bool(value, b);
    if (!ok) {
      errors.push_back("bad " + schema_key->type + " for " + full + ": '" + value + "'");
      continue;
    }
    try {
      if (full == "model.variant") cfg.model.variant = variant_from_name(value);
      else if (full == "model.t1") cfg.model.t1 = r;
      else if (full == "model.t2") cfg.model.t2 = r;
      else if (full == "model.t3") cfg.model.t3 = r;
      else if (full == "model.gamma") cfg.model.gamma = r;
      else if (full == "model.delta_onsite") cfg.model.delta_onsite = r;
      else if (full == "model.delta_stagger") cfg.model.delta_stagger = r;
      else if (full == "model.transverse_k") cfg.transverse_k = r;
      else if (full == "numeric.n_cells") cfg.n_cells = i;
      else if (full == "numeric.n_p") cfg.n_p = i;
      else if (full == "numeric.n_phi") cfg.n_phi = i;
      else if (full == "numeric.n_momentum") cfg.n_momentum = i;
      else if (full == "numeric.termination") cfg.termination = termination_from_name(value);
      else if (full == "numeric.window_cells") cfg.window_cells = i;
      else if (full == "numeric.p_window_cells") cfg.p_window_cells = i;
      else if (full == "numeric.threshold") cfg.threshold = r;
      else if (full == "numeric.admissibility_tol") cfg.admissibility_tol = r;
      else if (full == "numeric.workers") cfg.workers = i;
      else if (full == "numeric.winding_estimator")
        cfg.estimator = value == "right_only" ? WindingEstimator::RightOnly
                                              : (value == "biorthogonal"
                                                     ? WindingEstimator::Biorthogonal
                                                     : throw ValidationError("unknown estimator: " + value));
      else if (full == "numeric.sweep_parameter")
        cfg.sweep_parameter = sweep_parameter_from_name(value);
      else if (full == "numeric.sweep_start") cfg.sweep_start = r;
      else if (full == "numeric.sweep_stop") cfg.sweep_stop = r;
      else if (full == "numeric.sweep_points") cfg.sweep_points = i;
      else if (full == "numeric.loop_center_kx") cfg.loop_center_kx = r;
      else if (full == "numeric.loop_center_ky") cfg.loop_center_ky = r;
      else if (full == "numeric.loop_radius") cfg.loop_radius = r;
      else if (full == "numeric.loop_points") cfg.loop_points = i;
      else if (full == "numeric.phase_mode") {
        if (value != "pbc" && value != "obc") throw ValidationError("phase_mode must be pbc or obc");
        cfg.phase_mode = value;
      } else if (full == "numeric.grid_gamma_min") cfg.grid_gamma_min = r;
      else if (full == "numeric.grid_gamma_max") cfg.grid_gamma_max = r;
      else if (full == "numeric.grid_gamma_points") cfg.grid_gamma_points = i;
      else if (full == "numeric.grid_t1_min") cfg.grid_t1_min = r;
      else if (full == "numeric.grid_t1_max") cfg.grid_t1_max = r;
      else if (full == "numeric.grid_t1_points") cfg.grid_t1_points = i;
      else if (full == "output.out_dir") cfg.out_dir = value;
      else if (full == "output.csv") cfg.write_csv = b;
      else if (full == "output.json") cfg.write_json = b;
      else if (full == "output.svg") cfg.write_svg = b;
      else if (full == "output.eigenvectors") cfg.write_eigenvectors = b;
    } catch (const std::exception& e) {
      errors.push_back(std::string(e.what()) + " (key " + full + ")");
    }
  }

  if (cfg.threshold <= 0.0 || cfg.threshold >= 1.0)
    errors.push_back("numeric.threshold must lie in (0, 1)");
  if (cfg.admissibility_tol <= 0.0) errors.push_back("numeric.admissibility_tol must be positive");
  if (cfg.n_cells < 2) errors.push_back("numeric.n_cells must be >= 2");
  if (cfg.n_p < 2) errors.push_back("numeric.n_p must be >= 2");
  if (cfg.n_phi < 64) errors.push_back("numeric.n_phi must be >= 64");
  if (cfg.loop_radius <= 0.0) errors.push_back("numeric.loop_radius must be positive");
  return cfg;
}

std::string render_config(const ConfigValues& values) {
  std::string current_section;
  std::string out;
  for (const auto& [full, value] : values) {
    const auto dot = full.find('.');
    const std::string section = full.substr(0, dot);
    if (section != current_section) {
      if (!out.empty()) out += "\n";
      out += "[" + section + "]\n";
      current_section = section;
    }
    out += full.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

std::string config_help_text() {
  std::string out = "config keys (file sections or --section.key flags):\n";
  for (const auto& k : config_schema()) {
    out += "  " + k.section + "." + k.key;
    out += " (" + k.type + ", default " + k.default_value + "): " + k.description + "\n";
  }
  return out;
}

}  // namespace nhtb
