#include "nhtb/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "nhtb/gbz.hpp"
#include "nhtb/invariants.hpp"

namespace nhtb {

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::T1: return "t1";
    case SweepParameter::Gamma: return "gamma";
    case SweepParameter::TransverseK: return "transverse_k";
  }
  return "t1";
}

SweepParameter sweep_parameter_from_name(const std::string& s) {
  if (s == "t1") return SweepParameter::T1;
  if (s == "gamma") return SweepParameter::Gamma;
  if (s == "transverse_k") return SweepParameter::TransverseK;
  throw ValidationError("unknown sweep parameter: " + s);
}

std::vector<double> linspace(double start, double stop, int n) {
  if (n < 2) throw ValidationError("grid needs at least 2 points");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = start + (stop - start) * i / (n - 1);
  return v;
}

void parallel_for_indexed(int n, int n_workers, const std::function<void(int)>& fn) {
  if (n_workers <= 0) n_workers = static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  n_workers = std::min(n_workers, n);
  if (n_workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> detect_jumps(const std::vector<double>& axis_values,
                                 const std::vector<double>& values, double min_step) {
  std::vector<double> jumps;
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (std::abs(values[i + 1] - values[i]) > min_step)
      jumps.push_back(0.5 * (axis_values[i] + axis_values[i + 1]));
  return jumps;
}

int brute_force_gap_closing_count(const ModelSpec& spec, int n_points) {
  int count = 0;
  std::vector<double> g(n_points);
  for (int j = 0; j < n_points; ++j) {
    const double ky = 2.0 * M_PI * (j + 0.618) / n_points;
    g[j] = edge_ratios(spec, ky).product_abs - 1.0;
  }
  for (int j = 0; j < n_points; ++j) {
    const double a = g[j], b = g[(j + 1) % n_points];
    if (a == 0.0)
      ++count;
    else if (b != 0.0 && std::signbit(a) != std::signbit(b))
      ++count;
  }
  return count;
}

namespace {

ModelSpec spec_at(const ModelSpec& base, const SweepAxis& axis, double value) {
  ModelSpec s = base;
  if (axis.parameter == SweepParameter::T1) s.t1 = value;
  if (axis.parameter == SweepParameter::Gamma) s.gamma = value;
  return s;
}

bool analytic_p_applies(const ModelSpec& spec) {
  return spec.t3 == 0.0 &&
         (spec.variant == Variant::Ssh1d || spec.variant == Variant::ChernXObc);
}

Termination p_termination(const ModelSpec& spec) {
  return (spec.variant == Variant::ChernYObcA || spec.variant == Variant::ChernYObcB)
             ? Termination::FullCells
             : Termination::BrokenCellAatBothEnds;
}

void compute_point(const ModelSpec& spec, double k_perp, const SweepOptions& opt, SweepPoint& pt) {
  const auto record_failure = [&pt](const std::exception& e) {
    pt.failed = true;
    if (pt.error.empty()) pt.error = e.what();
  };

  try {
    pt.pbc_abs_energies.reserve(opt.n_momentum);
    double min_abs = std::numeric_limits<double>::max();
    for (int j = 0; j < opt.n_momentum; ++j) {
      const double k = 2.0 * M_PI * j / opt.n_momentum;
      const double abs_e = std::abs(pbc_energy(d_vector(spec, k, k_perp)));
      min_abs = std::min(min_abs, abs_e);
      pt.pbc_abs_energies.push_back(abs_e);
    }
    pt.ep_flag = min_abs < 1e-6;
  } catch (const std::exception& e) {
    record_failure(e);
  }

  try {
    const ObcHamiltonian obc = build_obc(spec, opt.n_obc, Termination::FullCells, k_perp);
    const double rho = skin_gauge_rho(spec, k_perp);
    const BiorthogonalSpectrum bs = biorthogonal_spectrum(obc, rho);
    const int window = opt.window_cells > 0 ? opt.window_cells : default_window_cells(opt.n_obc);
    const ModeClassification cls = classify_modes(obc, bs, window, opt.threshold);
    for (size_t j = 0; j < bs.eigenvalues.size(); ++j) {
      pt.obc_abs_energies.push_back(std::abs(bs.eigenvalues[j]));
      if (cls.labels[j] != ModeLabel::Bulk) {
        pt.edge_abs_energies.push_back(std::abs(bs.eigenvalues[j]));
        pt.edge_boundary_weights.push_back(cls.boundary_weight[j]);
      }
    }
  } catch (const std::exception& e) {
    record_failure(e);
  }

  try {
    if (analytic_p_applies(spec)) {
      pt.P = analytic_bp(spec, k_perp, opt.n_p).value;
    } else {
      const ObcHamiltonian obc = build_obc(spec, opt.n_p, p_termination(spec), k_perp);
      const double rho = skin_gauge_rho(spec, k_perp);
      const BiorthogonalSpectrum bs = biorthogonal_spectrum(obc, rho);
      const int window =
          opt.p_window_cells > 0 ? opt.p_window_cells : default_window_cells(opt.n_p);
      const ModeClassification cls = classify_modes(obc, bs, window, opt.threshold);
      const std::vector<int> picked = select_edge_modes(spec, obc, bs, cls, k_perp);
      pt.P = picked.empty() ? 0.0 : biorthogonal_polarization(obc, bs, picked);
    }
  } catch (const std::exception& e) {
    record_failure(e);
  }

  try {
    const TrigForm f = trig_form(spec, k_perp);
    double hop = 0.0;
    for (int c = 0; c < 3; ++c) hop = std::max({hop, std::abs(f.q[c]), std::abs(f.s[c])});
    if (hop < 1e-12) {
      // decoupled cells: every contour integrand is constant
      pt.nu_tot = 0.0;
      pt.nu_tot_right_only = 0.0;
      return;
    }
    const GbzContour coarse = gbz_contour(spec, k_perp, opt.gbz_resolution);
    const GbzContour fine = gbz_contour(spec, k_perp, 2 * opt.gbz_resolution);
    const auto richardson = [&](bool right_only) {
      const NonBlochWinding wc = non_bloch_winding(spec, coarse, k_perp, right_only);
      const NonBlochWinding wf = non_bloch_winding(spec, fine, k_perp, right_only);
      return 2.0 * wf.nu_total - wc.nu_total;
    };
    const double nu_bi = richardson(false);
    const double nu_ro = richardson(true);
    pt.nu_tot = opt.estimator == WindingEstimator::RightOnly ? nu_ro : nu_bi;
    pt.nu_tot_right_only = nu_ro;
  } catch (const std::exception& e) {
    record_failure(e);
  }
}

ModelSpec grid_spec(double gamma, double t1, double delta_stagger, double delta_onsite) {
  ModelSpec s;
  s.variant = Variant::ChernXObc;
  s.t1 = t1;
  s.gamma = gamma;
  s.t3 = 0.0;
  s.delta_stagger = delta_stagger;
  s.delta_onsite = delta_onsite;
  return s;
}

}  // namespace

SweepResult sweep(const ModelSpec& spec, const SweepAxis& axis, const SweepOptions& options) {
  if (axis.n_points < 2) throw ValidationError("sweep needs at least 2 points");
  if (!(axis.start < axis.stop)) throw ValidationError("sweep axis needs start < stop");
  if (axis.parameter == SweepParameter::TransverseK && !is_two_dimensional(spec.variant))
    throw ValidationError("transverse_k sweeps need a two-dimensional variant");

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid = linspace(axis.start, axis.stop, axis.n_points);

  SweepResult result;
  result.base = spec;
  result.axis = axis;
  result.options = options;
  result.points.resize(axis.n_points);

  parallel_for_indexed(axis.n_points, options.n_workers, [&](int i) {
    SweepPoint& pt = result.points[i];
    pt.param = grid[i];
    const bool transverse = axis.parameter == SweepParameter::TransverseK;
    const ModelSpec spec_i = transverse ? spec : spec_at(spec, axis, grid[i]);
    const double k_perp = transverse ? grid[i] : options.transverse_k;
    compute_point(spec_i, k_perp, options, pt);
  });

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

PhaseDiagramGrid phase_diagram_pbc(double delta_stagger, double delta_onsite,
                                   const std::vector<double>& gamma_grid,
                                   const std::vector<double>& t1_grid, int n_workers) {
  if (gamma_grid.empty() || t1_grid.empty()) throw ValidationError("phase grids must be nonempty");
  PhaseDiagramGrid grid;
  grid.gamma_grid = gamma_grid;
  grid.t1_grid = t1_grid;
  grid.labels.assign(gamma_grid.size() * t1_grid.size(), 0);
  const int nt = static_cast<int>(t1_grid.size());
  parallel_for_indexed(static_cast<int>(grid.labels.size()), n_workers, [&](int idx) {
    const ModelSpec s =
        grid_spec(gamma_grid[idx / nt], t1_grid[idx % nt], delta_stagger, delta_onsite);
    grid.labels[idx] = pbc_ep_locations(s).empty() ? 0 : 1;
  });
  return grid;
}

PhaseDiagramGrid phase_diagram_obc(double delta_stagger, double delta_onsite,
                                   const std::vector<double>& gamma_grid,
                                   const std::vector<double>& t1_grid, int n_workers) {
  if (gamma_grid.empty() || t1_grid.empty()) throw ValidationError("phase grids must be nonempty");
  PhaseDiagramGrid grid;
  grid.gamma_grid = gamma_grid;
  grid.t1_grid = t1_grid;
  grid.labels.assign(gamma_grid.size() * t1_grid.size(), 0);
  const int nt = static_cast<int>(t1_grid.size());
  parallel_for_indexed(static_cast<int>(grid.labels.size()), n_workers, [&](int idx) {
    const ModelSpec s =
        grid_spec(gamma_grid[idx / nt], t1_grid[idx % nt], delta_stagger, delta_onsite);
    grid.labels[idx] = static_cast<int>(obc_gap_closings(s).size());
  });
  return grid;
}

}  // namespace nhtb
