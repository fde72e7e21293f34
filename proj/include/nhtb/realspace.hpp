#pragma once

#include <vector>

#include "nhtb/model.hpp"

namespace nhtb {

enum class Termination { FullCells, BrokenCellAatBothEnds };

std::string termination_name(Termination t);
Termination termination_from_name(const std::string& s);

/// Dense OBC Hamiltonian. Basis order (1,A),(1,B),(2,A),...; the broken-cell
/// geometry drops the trailing B site, so dim = 2N or 2N-1.
struct ObcHamiltonian {
  Eigen::MatrixXcd h;
  int n_cells = 0;
  Termination termination = Termination::FullCells;
  int dim() const { return static_cast<int>(h.rows()); }
};

ObcHamiltonian build_obc(const ModelSpec& spec, int n_cells, Termination termination,
                         double k_transverse = 0.0);

/// Full left/right eigensystem, biorthogonally normalized so <L_i|R_j> = delta_ij.
/// pairing_residual tracks max_i ||H^dag L_i - conj(E_i) L_i|| / ||H||.
struct BiorthogonalSpectrum {
  std::vector<cplx> eigenvalues;
  Eigen::MatrixXcd right;  // columns
  Eigen::MatrixXcd left;   // columns
  double pairing_residual = 0.0;
  double gauge_rho = 1.0;
};

/// Dense diagonalization with both eigenvector sides. gauge_rho != 1 applies a
/// per-cell similarity scaling rho^cell before solving; reported vectors are
/// mapped back, so biorthogonal observables are unchanged while conditioning
/// at strong skin localization improves.
BiorthogonalSpectrum biorthogonal_spectrum(const ObcHamiltonian& obc, double gauge_rho = 1.0);

/// Geometric mean of |beta| over a coarse GBZ contour; 1.0 when the contour
/// is empty or the GBZ construction fails.
double skin_gauge_rho(const ModelSpec& spec, double k_transverse = 0.0);

enum class ModeLabel { Bulk, EdgeLeft, EdgeRight };

struct ModeClassification {
  std::vector<ModeLabel> labels;
  std::vector<double> boundary_weight;  // biorthogonal weight in the two windows
};

ModeClassification classify_modes(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                                  int window_cells, double threshold);

int default_window_cells(int n_cells);

/// P = M - (1/N) sum_alpha <psi_L|n|psi_R>/<psi_L|psi_R> over the selected modes.
double biorthogonal_polarization(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                                 const std::vector<int>& mode_indices);

/// Modes entering the polarization sum: all classified edge modes, or when the
/// classifier finds none, the single mode closest to the analytic edge energy.
std::vector<int> select_edge_modes(const ModelSpec& model, const ObcHamiltonian& obc,
                                   const BiorthogonalSpectrum& spec,
                                   const ModeClassification& cls, double k_transverse = 0.0);

}  // namespace nhtb
