#pragma once

#include <utility>
#include <vector>

#include "nhtb/model.hpp"

namespace nhtb {

double gbz_radius_ssh(const ModelSpec& spec);
double gbz_radius_chern(const ModelSpec& spec, double ky);

struct EdgeRatios {
  double r_R = 0.0;
  double r_L = 0.0;
  double product_abs = 0.0;
};

EdgeRatios edge_ratios(const ModelSpec& spec, double ky);

/// All ky in [0, 2pi) where the OBC gap closes; count in {0, 2, 4, 6}.
std::vector<double> obc_gap_closings(const ModelSpec& spec);

struct AnalyticObcBand {
  double theta = 0.0;
  cplx energy{0.0, 0.0};
  std::array<cplx, 3> eta{};
  double gamma_radius = 0.0;
};

AnalyticObcBand analytic_obc_band(const ModelSpec& spec, double ky, double theta);
cplx analytic_obc_energy(const ModelSpec& spec, double ky, double theta);

/// Right bulk eigenvector of the broken-cell chain at theta = pi j / N, with
/// eigenvalue analytic_obc_energy(spec, ky, theta). The trailing B slot is
/// kept (it is exactly zero) so the vector has 2 n_cells entries.
Eigen::VectorXcd bulk_state_ansatz(const ModelSpec& spec, double ky, double theta, int n_cells);

struct AnalyticBp {
  double value = 0.0;
  bool delocalized = false;
};

/// Closed-form biorthogonal polarization for the t3 = 0 regime,
/// broken-cell geometry.
AnalyticBp analytic_bp(const ModelSpec& spec, double ky, int n_cells);

struct VorticityResult {
  double nu_12 = 0.0;
  std::vector<double> unwrapped_phase;
};

/// Winding of Arg(E1 - E2) over a sampled closed loop; raw value, may be
/// half-integer.
VorticityResult vorticity(const std::vector<cplx>& energies_1, const std::vector<cplx>& energies_2);

/// Vorticity of the two PBC bands on a circular momentum-space loop, with the
/// sample count doubled (up to 2^16) until no unwrapping step exceeds pi/2.
VorticityResult vorticity_on_loop(const ModelSpec& spec, double center_kx, double center_ky,
                                  double radius, int n_initial = 256);

std::vector<std::pair<double, double>> pbc_ep_locations(const ModelSpec& spec);

}  // namespace nhtb
