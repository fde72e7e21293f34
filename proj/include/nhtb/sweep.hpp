#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nhtb/model.hpp"
#include "nhtb/realspace.hpp"

namespace nhtb {

enum class SweepParameter { T1, Gamma, TransverseK };

std::string sweep_parameter_name(SweepParameter p);
SweepParameter sweep_parameter_from_name(const std::string& s);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::T1;
  double start = 0.0;
  double stop = 1.0;
  int n_points = 2;
};

enum class WindingEstimator { Biorthogonal, RightOnly };

struct SweepOptions {
  int n_obc = 100;
  int n_p = 100;
  int gbz_resolution = 512;
  int n_momentum = 512;  // dense PBC sampling per periodic direction
  int window_cells = 0;    // classifier window at n_obc; 0: max(3, N/20)
  int p_window_cells = 0;  // classifier window at n_p; 0: max(3, N/20)
  double threshold = 0.5;
  WindingEstimator estimator = WindingEstimator::Biorthogonal;
  double transverse_k = 0.0;  // base transverse momentum for non-transverse sweeps
  int n_workers = 0;          // 0: hardware concurrency
};

struct SweepPoint {
  double param = 0.0;
  std::vector<double> obc_abs_energies;
  std::vector<double> pbc_abs_energies;
  std::vector<double> edge_abs_energies;
  std::vector<double> edge_boundary_weights;
  double P = 0.0;
  double nu_tot = 0.0;
  double nu_tot_right_only = 0.0;
  bool ep_flag = false;  // PBC gap collapse at this point
  bool failed = false;
  std::string error;
};

struct SweepResult {
  ModelSpec base;
  SweepAxis axis;
  SweepOptions options;
  std::vector<SweepPoint> points;
  double wall_seconds = 0.0;
};

/// One point per axis value: dense PBC |E| samples, OBC spectrum with edge
/// labels at n_obc, P at n_p (closed form when t3 = 0 for the x-OBC variants,
/// numeric otherwise), and the GBZ winding. Failing points are flagged, not
/// fatal.
SweepResult sweep(const ModelSpec& spec, const SweepAxis& axis, const SweepOptions& options);

struct PhaseDiagramGrid {
  std::vector<double> gamma_grid;
  std::vector<double> t1_grid;
  std::vector<int> labels;  // row-major, gamma outer
  int label_at(int ig, int it) const { return labels[static_cast<size_t>(ig) * t1_grid.size() + it]; }
};

PhaseDiagramGrid phase_diagram_pbc(double delta_stagger, double delta_onsite,
                                   const std::vector<double>& gamma_grid,
                                   const std::vector<double>& t1_grid, int n_workers = 0);

PhaseDiagramGrid phase_diagram_obc(double delta_stagger, double delta_onsite,
                                   const std::vector<double>& gamma_grid,
                                   const std::vector<double>& t1_grid, int n_workers = 0);

std::vector<double> linspace(double start, double stop, int n);

/// Grid-adjacent |dP| > 0.5 locations, reported as midpoints.
std::vector<double> detect_jumps(const std::vector<double>& axis_values,
                                 const std::vector<double>& values, double min_step = 0.5);

/// Brute-force count of |r_L r_R| = 1 crossings over a dense ky scan.
int brute_force_gap_closing_count(const ModelSpec& spec, int n_points = 10000);

/// Runs fn(i) for i in [0, n) on a worker pool; results land in per-index slots.
void parallel_for_indexed(int n, int n_workers, const std::function<void(int)>& fn);

}  // namespace nhtb
