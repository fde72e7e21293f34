#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhtb/config.hpp"
#include "nhtb/csvio.hpp"
#include "nhtb/gbz.hpp"
#include "nhtb/invariants.hpp"
#include "nhtb/model.hpp"
#include "nhtb/realspace.hpp"
#include "nhtb/recipes.hpp"
#include "nhtb/svg.hpp"
#include "nhtb/sweep.hpp"

namespace {

using nhtb::cplx;
using Json = nlohmann::json;

constexpr const char* kVersion = "1.0.0";

struct CliState {
  std::string config_path;
  std::string out_dir_flag;
  std::string recipes_dir;
  std::string manifest_path;
  std::string recipe_name;
  std::map<std::string, std::string> overrides;
};

nhtb::RunConfig load_config(const CliState& state, nhtb::ConfigValues& merged) {
  std::vector<std::string> errors;
  merged.clear();
  if (!state.config_path.empty()) merged = nhtb::parse_config_file(state.config_path, errors);
  for (const auto& [k, v] : state.overrides) merged[k] = v;
  if (!state.out_dir_flag.empty()) merged["output.out_dir"] = state.out_dir_flag;

  nhtb::RunConfig cfg = nhtb::build_run_config(merged, errors);
  if (!errors.empty()) {
    std::string joined = "configuration invalid:";
    for (const auto& e : errors) joined += "\n  " + e;
    throw nhtb::ValidationError(joined);
  }
  std::filesystem::create_directories(cfg.out_dir);
  return cfg;
}

std::string out_path(const nhtb::RunConfig& cfg, const std::string& file) {
  return (std::filesystem::path(cfg.out_dir) / file).string();
}

void write_manifest(const nhtb::RunConfig& cfg, const nhtb::ConfigValues& values,
                    const std::string& command, const std::string& recipe, double wall_seconds,
                    const std::vector<std::string>& outputs, const Json& sizes) {
  if (!cfg.write_json) return;
  Json m;
  m["schema_version"] = 1;
  m["command"] = command;
  if (!recipe.empty()) m["recipe"] = recipe;
  m["config"] = Json::object();
  for (const auto& [k, v] : values) m["config"][k] = v;
  m["sizes"] = sizes;
  m["versions"] = {{"artifact", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}};
  m["wall_seconds"] = wall_seconds;
  m["outputs"] = outputs;
  std::ofstream out(out_path(cfg, "manifest.json"), std::ios::binary);
  out << m.dump(2) << "\n";
}

int run_spectrum(const CliState& state) {
  nhtb::ConfigValues values;
  const nhtb::RunConfig cfg = load_config(state, values);
  const auto t0 = std::chrono::steady_clock::now();

  const nhtb::ObcHamiltonian obc =
      nhtb::build_obc(cfg.model, cfg.n_cells, cfg.termination, cfg.transverse_k);
  const double rho = nhtb::skin_gauge_rho(cfg.model, cfg.transverse_k);
  const nhtb::BiorthogonalSpectrum bs = nhtb::biorthogonal_spectrum(obc, rho);
  const int window =
      cfg.window_cells > 0 ? cfg.window_cells : nhtb::default_window_cells(cfg.n_cells);
  const nhtb::ModeClassification cls = nhtb::classify_modes(obc, bs, window, cfg.threshold);

  std::cout << "eigenvalues: " << obc.dim() << "\n";
  for (size_t j = 0; j < bs.eigenvalues.size(); ++j) {
    const cplx e = bs.eigenvalues[j];
    std::cout << "E = " << nhtb::format_double(e.real()) << (e.imag() < 0 ? " - " : " + ")
              << nhtb::format_double(std::abs(e.imag())) << "i";
    if (cls.labels[j] != nhtb::ModeLabel::Bulk)
      std::cout << (cls.labels[j] == nhtb::ModeLabel::EdgeLeft ? "  [edge left]"
                                                               : "  [edge right]");
    std::cout << "\n";
  }
  int edges = 0;
  for (const auto l : cls.labels)
    if (l != nhtb::ModeLabel::Bulk) ++edges;
  std::cout << "edge modes: " << edges << "\n";
  std::cout << "pairing residual: " << nhtb::format_double(bs.pairing_residual) << "\n";

  std::vector<std::string> outputs;
  if (cfg.write_csv) {
    nhtb::write_csv(nhtb::spectrum_table(obc, bs, cls), out_path(cfg, "spectrum.csv"));
    outputs.push_back("spectrum.csv");
  }
  if (cfg.write_eigenvectors) {
    Json j;
    for (size_t k = 0; k < bs.eigenvalues.size(); ++k) {
      Json mode;
      mode["re_E"] = bs.eigenvalues[k].real();
      mode["im_E"] = bs.eigenvalues[k].imag();
      for (int s = 0; s < obc.dim(); ++s) {
        mode["right_re"].push_back(bs.right(s, k).real());
        mode["right_im"].push_back(bs.right(s, k).imag());
        mode["left_re"].push_back(bs.left(s, k).real());
        mode["left_im"].push_back(bs.left(s, k).imag());
      }
      j["modes"].push_back(mode);
    }
    std::ofstream out(out_path(cfg, "spectrum.json"), std::ios::binary);
    out << j.dump() << "\n";
    outputs.push_back("spectrum.json");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(cfg, values, "spectrum", "", wall, outputs,
                 {{"n_cells", cfg.n_cells}, {"dim", obc.dim()}});
  return 0;
}

int run_gbz(const CliState& state) {
  nhtb::ConfigValues values;
  const nhtb::RunConfig cfg = load_config(state, values);
  const auto t0 = std::chrono::steady_clock::now();

  const nhtb::GbzContour contour =
      nhtb::gbz_contour(cfg.model, cfg.transverse_k, cfg.n_phi, cfg.admissibility_tol);

  double reference = 1.0;
  if (cfg.model.t3 == 0.0 && cfg.model.variant == nhtb::Variant::Ssh1d)
    reference = nhtb::gbz_radius_ssh(cfg.model);
  else if (cfg.model.t3 == 0.0 && cfg.model.variant == nhtb::Variant::ChernXObc)
    reference = nhtb::gbz_radius_chern(cfg.model, cfg.transverse_k);

  double max_dev = 0.0;
  for (const auto& pt : contour.points)
    max_dev = std::max(max_dev, std::abs(std::abs(pt.beta) - reference));

  std::cout << "contour points: " << contour.points.size() << "\n";
  std::cout << "closure gap: " << nhtb::format_double(contour.closure_gap) << "\n";
  if (max_dev < 1e-6)
    std::cout << "max |beta| deviation from " << nhtb::format_double(reference)
              << ": < 1e-06\n";
  else
    std::cout << "max |beta| deviation from " << nhtb::format_double(reference) << ": "
              << nhtb::format_double(max_dev) << "\n";

  std::vector<std::string> outputs;
  if (cfg.write_csv) {
    nhtb::write_csv(nhtb::gbz_table(contour), out_path(cfg, "gbz.csv"));
    outputs.push_back("gbz.csv");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(cfg, values, "gbz", "", wall, outputs,
                 {{"n_phi", cfg.n_phi}, {"points", contour.points.size()}});
  return 0;
}

int run_invariants(const CliState& state) {
  nhtb::ConfigValues values;
  const nhtb::RunConfig cfg = load_config(state, values);
  const auto t0 = std::chrono::steady_clock::now();
  Json j;

  try {
    const double radius = cfg.model.variant == nhtb::Variant::Ssh1d
                              ? nhtb::gbz_radius_ssh(cfg.model)
                              : nhtb::gbz_radius_chern(cfg.model, cfg.transverse_k);
    std::cout << "Gamma: " << nhtb::format_double(radius) << "\n";
    j["gamma_radius"] = radius;
  } catch (const nhtb::ValidationError& e) {
    std::cout << "Gamma: not available (" << e.what() << ")\n";
  }

  try {
    const auto eps = nhtb::pbc_ep_locations(cfg.model);
    std::cout << "PBC EPs: " << eps.size();
    for (const auto& [kx, ky] : eps)
      std::cout << "  (" << nhtb::format_double(kx) << ", " << nhtb::format_double(ky) << ")";
    std::cout << "\n";
    for (const auto& [kx, ky] : eps) j["pbc_eps"].push_back({kx, ky});
    j["pbc_ep_count"] = eps.size();
  } catch (const nhtb::ValidationError& e) {
    std::cout << "PBC EPs: not available (" << e.what() << ")\n";
  }

  try {
    const auto closings = nhtb::obc_gap_closings(cfg.model);
    std::cout << "OBC gap closings: " << closings.size();
    for (const double ky : closings) std::cout << "  " << nhtb::format_double(ky);
    std::cout << "\n";
    j["obc_gap_closings"] = closings;
  } catch (const nhtb::ValidationError& e) {
    std::cout << "OBC gap closings: not available (" << e.what() << ")\n";
  }

  if (nhtb::is_two_dimensional(cfg.model.variant)) {
    const nhtb::VorticityResult v = nhtb::vorticity_on_loop(
        cfg.model, cfg.loop_center_kx, cfg.loop_center_ky, cfg.loop_radius, cfg.loop_points);
    std::cout << "vorticity: " << nhtb::format_double(v.nu_12) << "\n";
    j["vorticity"] = v.nu_12;
  } else {
    std::cout << "vorticity: not available (momentum loops need a two-dimensional variant)\n";
  }

  std::vector<std::string> outputs;
  if (cfg.write_json) {
    std::ofstream out(out_path(cfg, "invariants.json"), std::ios::binary);
    out << j.dump(2) << "\n";
    outputs.push_back("invariants.json");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(cfg, values, "invariants", "", wall, outputs, Json::object());
  return 0;
}

void render_sweep_svg(const nhtb::RunConfig& cfg, const nhtb::SweepResult& result,
                      const std::string& path) {
  double ymax = 0.0;
  for (const auto& pt : result.points)
    for (const double v : pt.pbc_abs_energies) ymax = std::max(ymax, v);
  ymax = std::max(ymax * 1.05, 1.0);

  nhtb::SvgPlot plot(640, 420);
  plot.set_limits(result.points.front().param, result.points.back().param, -0.25, ymax);
  std::vector<double> px, py;
  const auto flush_scatter = [&](const std::string& color, double r) {
    plot.scatter(px, py, color, r);
    px.clear();
    py.clear();
  };
  for (const auto& pt : result.points)
    for (const double v : pt.pbc_abs_energies) {
      px.push_back(pt.param);
      py.push_back(v);
    }
  flush_scatter("#b0b0b0", 0.8);
  for (const auto& pt : result.points)
    for (const double v : pt.obc_abs_energies) {
      px.push_back(pt.param);
      py.push_back(v);
    }
  flush_scatter("#2060c0", 1.0);
  for (const auto& pt : result.points)
    for (const double v : pt.edge_abs_energies) {
      px.push_back(pt.param);
      py.push_back(v);
    }
  flush_scatter("#20a040", 1.6);

  std::vector<double> xs, ps, nus;
  for (const auto& pt : result.points) {
    xs.push_back(pt.param);
    ps.push_back(pt.P);
    nus.push_back(pt.nu_tot);
  }
  plot.step(xs, ps, "#d02020", 1.5, true);
  plot.step(xs, nus, "#20b0c0", 1.5, false);
  plot.axes(nhtb::sweep_parameter_name(result.axis.parameter), "|E|, P, nu_tot");
  plot.save(path);
}

int run_sweep(const CliState& state, const std::string& recipe = "") {
  nhtb::ConfigValues values;
  const nhtb::RunConfig cfg = load_config(state, values);

  nhtb::SweepAxis axis;
  axis.parameter = cfg.sweep_parameter;
  axis.start = cfg.sweep_start;
  axis.stop = cfg.sweep_stop;
  axis.n_points = cfg.sweep_points;

  nhtb::SweepOptions options;
  options.n_obc = cfg.n_cells;
  options.n_p = cfg.n_p;
  options.gbz_resolution = cfg.n_phi;
  options.n_momentum = cfg.n_momentum;
  options.window_cells = cfg.window_cells;
  options.p_window_cells = cfg.p_window_cells;
  options.threshold = cfg.threshold;
  options.estimator = cfg.estimator;
  options.transverse_k = cfg.transverse_k;
  options.n_workers = cfg.workers;

  const nhtb::SweepResult result = nhtb::sweep(cfg.model, axis, options);

  std::vector<double> xs, ps;
  int failed = 0;
  for (const auto& pt : result.points) {
    xs.push_back(pt.param);
    ps.push_back(pt.P);
    if (pt.failed) ++failed;
  }
  std::cout << "sweep points: " << result.points.size() << "\n";
  const auto jumps = nhtb::detect_jumps(xs, ps);
  std::cout << "P jumps: " << jumps.size();
  for (const double x : jumps) std::cout << "  " << nhtb::format_double(x);
  std::cout << "\n";
  std::cout << "failed points: " << failed << "\n";
  if (failed > 0)
    for (const auto& pt : result.points)
      if (pt.failed)
        std::cerr << "point " << nhtb::format_double(pt.param) << ": " << pt.error << "\n";

  std::vector<std::string> outputs;
  if (cfg.write_csv) {
    nhtb::write_csv(nhtb::sweep_table(result), out_path(cfg, "sweep.csv"));
    outputs.push_back("sweep.csv");
  }
  if (cfg.write_svg) {
    render_sweep_svg(cfg, result, out_path(cfg, "sweep.svg"));
    outputs.push_back("sweep.svg");
  }
  write_manifest(cfg, values, "sweep", recipe, result.wall_seconds, outputs,
                 {{"n_cells", cfg.n_cells},
                  {"n_p", cfg.n_p},
                  {"n_phi", cfg.n_phi},
                  {"sweep_points", cfg.sweep_points}});
  return 0;
}

int run_phase_diagram(const CliState& state, const std::string& recipe = "") {
  nhtb::ConfigValues values;
  const nhtb::RunConfig cfg = load_config(state, values);
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<double> gamma_grid =
      nhtb::linspace(cfg.grid_gamma_min, cfg.grid_gamma_max, cfg.grid_gamma_points);
  const std::vector<double> t1_grid =
      nhtb::linspace(cfg.grid_t1_min, cfg.grid_t1_max, cfg.grid_t1_points);

  const nhtb::PhaseDiagramGrid grid =
      cfg.phase_mode == "pbc"
          ? nhtb::phase_diagram_pbc(cfg.model.delta_stagger, cfg.model.delta_onsite, gamma_grid,
                                    t1_grid, cfg.workers)
          : nhtb::phase_diagram_obc(cfg.model.delta_stagger, cfg.model.delta_onsite, gamma_grid,
                                    t1_grid, cfg.workers);

  std::set<int> seen(grid.labels.begin(), grid.labels.end());
  std::cout << "phase grid: " << gamma_grid.size() << " x " << t1_grid.size() << " ("
            << cfg.phase_mode << ")\n";
  std::cout << "labels seen:";
  for (const int l : seen) std::cout << " " << l;
  std::cout << "\n";

  std::vector<std::string> outputs;
  const std::string csv_name = "phase_" + cfg.phase_mode + ".csv";
  if (cfg.write_csv) {
    nhtb::write_csv(nhtb::phase_grid_table(grid), out_path(cfg, csv_name));
    outputs.push_back(csv_name);
  }
  if (cfg.write_svg) {
    nhtb::SvgPlot plot(520, 460);
    plot.set_limits(t1_grid.front(), t1_grid.back(), gamma_grid.front(), gamma_grid.back());
    const std::map<int, std::string> palette = {{0, "#f2f2f2"}, {1, "#e08030"}, {2, "#76a5d8"},
                                                {4, "#e5c050"}, {6, "#b05fc0"}};
    const double dg = gamma_grid.size() > 1 ? gamma_grid[1] - gamma_grid[0] : 1.0;
    const double dt = t1_grid.size() > 1 ? t1_grid[1] - t1_grid[0] : 1.0;
    for (size_t ig = 0; ig < gamma_grid.size(); ++ig)
      for (size_t it = 0; it < t1_grid.size(); ++it) {
        const int label = grid.label_at(static_cast<int>(ig), static_cast<int>(it));
        const auto color = palette.count(label) ? palette.at(label) : "#000000";
        plot.cell(t1_grid[it] - dt / 2, t1_grid[it] + dt / 2, gamma_grid[ig] - dg / 2,
                  gamma_grid[ig] + dg / 2, color);
      }
    plot.axes("t1", "gamma");
    const std::string svg_name = "phase_" + cfg.phase_mode + ".svg";
    plot.save(out_path(cfg, svg_name));
    outputs.push_back(svg_name);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(cfg, values, "phase-diagram", recipe, wall, outputs,
                 {{"gamma_points", cfg.grid_gamma_points}, {"t1_points", cfg.grid_t1_points}});
  return 0;
}

int run_reproduce(CliState state) {
  if (!state.manifest_path.empty()) {
    std::ifstream in(state.manifest_path);
    if (!in) throw nhtb::ValidationError("cannot open manifest: " + state.manifest_path);
    Json m = Json::parse(in, nullptr, true, true);
    if (!m.contains("schema_version") || m["schema_version"].get<int>() != 1)
      throw nhtb::ValidationError("unsupported manifest schema version");
    state.config_path.clear();
    for (const auto& [k, v] : m["config"].items())
      if (!state.overrides.count(k)) state.overrides[k] = v.get<std::string>();
    const std::string command = m["command"].get<std::string>();
    const std::string recipe = m.value("recipe", "");
    if (command == "sweep") return run_sweep(state, recipe);
    if (command == "phase-diagram") return run_phase_diagram(state, recipe);
    throw nhtb::ValidationError("manifest command not reproducible: " + command);
  }

  if (state.recipe_name.empty()) throw nhtb::ValidationError("reproduce needs a recipe name");
  state.config_path = nhtb::recipe_path(state.recipe_name, state.recipes_dir);
  std::cout << "recipe: " << state.recipe_name << " (" << state.config_path << ")\n";
  if (nhtb::recipe_command(state.recipe_name) == "phase-diagram")
    return run_phase_diagram(state, state.recipe_name);
  return run_sweep(state, state.recipe_name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Hermitian two-band lattice toolkit: spectra, GBZ contours, winding numbers, "
               "biorthogonal polarization, phase diagrams"};
  app.fallthrough();
  app.require_subcommand(1);

  CliState state;
  app.add_option("--config", state.config_path, "config file (INI-style sections)");
  app.add_option("--out-dir", state.out_dir_flag, "output directory (overrides output.out_dir)");
  app.add_option("--recipes-dir", state.recipes_dir, "directory holding the shipped recipes");
  for (const auto& key : nhtb::config_schema()) {
    const std::string flag = "--" + key.section + "." + key.key;
    const std::string full = key.section + "." + key.key;
    const std::string desc = key.description + " (default " + key.default_value + ")";
    app.add_option_function<std::string>(
        flag, [&state, full](const std::string& v) { state.overrides[full] = v; }, desc);
  }

  CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "open-chain spectrum with edge labels");
  CLI::App* cmd_gbz = app.add_subcommand("gbz", "generalized Brillouin zone contour");
  CLI::App* cmd_invariants =
      app.add_subcommand("invariants", "closed-form invariants, EPs, vorticity");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "parameter sweep with spectra, P, nu_tot");
  CLI::App* cmd_phase = app.add_subcommand("phase-diagram", "2d (gamma, t1) phase grid");
  CLI::App* cmd_reproduce = app.add_subcommand("reproduce", "run a shipped figure recipe");
  cmd_reproduce->add_option("recipe", state.recipe_name, "recipe name (fig2a .. fig5b)");
  cmd_reproduce->add_option("--manifest", state.manifest_path,
                            "re-run from a previously written manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_spectrum->parsed()) return run_spectrum(state);
    if (cmd_gbz->parsed()) return run_gbz(state);
    if (cmd_invariants->parsed()) return run_invariants(state);
    if (cmd_sweep->parsed()) return run_sweep(state);
    if (cmd_phase->parsed()) return run_phase_diagram(state);
    if (cmd_reproduce->parsed()) return run_reproduce(state);
  } catch (const nhtb::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const nhtb::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
