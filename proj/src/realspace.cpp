#include "nhtb/realspace.hpp"

#include <algorithm>
#include <cmath>

#include "nhtb/gbz.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nhtb {

std::string termination_name(Termination t) {
  return t == Termination::FullCells ? "full_cells" : "broken_cell_a_at_both_ends";
}

Termination termination_from_name(const std::string& s) {
  if (s == "full_cells") return Termination::FullCells;
  if (s == "broken_cell_a_at_both_ends") return Termination::BrokenCellAatBothEnds;
  throw ValidationError("unknown termination: " + s);
}

namespace {

Eigen::Matrix2cd sigma_dot(const std::array<cplx, 3>& v) {
  DVector d{v[0], v[1], v[2]};
  return bloch_matrix(d);
}

}  // namespace

ObcHamiltonian build_obc(const ModelSpec& spec, int n_cells, Termination termination,
                         double k_transverse) {
  if (n_cells < 2) throw ValidationError("n_cells must be >= 2");
  const TrigForm f = trig_form(spec, k_transverse);

  const cplx i{0.0, 1.0};
  std::array<cplx, 3> hop_plus, hop_minus;
  for (int c = 0; c < 3; ++c) {
    hop_plus[c] = 0.5 * f.q[c] + 0.5 * i * f.s[c];
    hop_minus[c] = 0.5 * f.q[c] - 0.5 * i * f.s[c];
  }
  const Eigen::Matrix2cd onsite = sigma_dot(f.p);
  const Eigen::Matrix2cd hp = sigma_dot(hop_plus);
  const Eigen::Matrix2cd hm = sigma_dot(hop_minus);

  const int dim_full = 2 * n_cells;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_full, dim_full);
  for (int n = 0; n < n_cells; ++n) {
    h.block<2, 2>(2 * n, 2 * n) = onsite;
    if (n + 1 < n_cells) {
      h.block<2, 2>(2 * (n + 1), 2 * n) = hp;
      h.block<2, 2>(2 * n, 2 * (n + 1)) = hm;
    }
  }

  ObcHamiltonian obc;
  obc.n_cells = n_cells;
  obc.termination = termination;
  if (termination == Termination::BrokenCellAatBothEnds) {
    obc.h = h.topLeftCorner(dim_full - 1, dim_full - 1);
  } else {
    obc.h = std::move(h);
  }
  return obc;
}

BiorthogonalSpectrum biorthogonal_spectrum(const ObcHamiltonian& obc, double gauge_rho) {
  const int n = obc.dim();
  if (n < 1) throw ValidationError("empty Hamiltonian");

  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  if (gauge_rho > 0.0 && gauge_rho != 1.0) {
    const double mid = 0.5 * (obc.n_cells - 1);
    for (int s = 0; s < n; ++s) scale(s) = std::pow(gauge_rho, (s / 2) - mid);
  }

  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = obc.h(i, j) * (scale(j) / scale(i));

  BiorthogonalSpectrum out;
  out.gauge_rho = gauge_rho;
  out.eigenvalues.resize(n);
  out.right.resize(n, n);
  out.left.resize(n, n);

  std::vector<cplx> w(n);
  Eigen::MatrixXcd vl(n, n), vr(n, n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'V', 'V', n, a.data(), n, w.data(), vl.data(), n, vr.data(), n);
  if (info != 0) throw NumericalError("zgeev failed, info = " + std::to_string(info));

  const double h_norm = obc.h.norm();
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = w[j];
    // <L|R> is invariant under the gauge similarity, so test it on the
    // zgeev-normalized columns; in the original frame skin localization
    // shrinks it below any tolerance even for healthy pairs
    const cplx overlap = vl.col(j).dot(vr.col(j));
    if (std::abs(overlap) < 1e-14)
      throw NumericalError("biorthogonal pairing broke down (self-overlap below 1e-14)");
    const Eigen::VectorXcd r = scale.asDiagonal() * vr.col(j);
    const Eigen::VectorXcd l = scale.asDiagonal().inverse() * vl.col(j);
    const double rnorm = r.norm();
    out.right.col(j) = r / rnorm;
    out.left.col(j) = l * (rnorm / std::conj(overlap));
  }

  double worst = 0.0;
  const Eigen::MatrixXcd hd = obc.h.adjoint();
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXcd res =
        hd * out.left.col(j) - std::conj(out.eigenvalues[j]) * out.left.col(j);
    worst = std::max(worst, res.norm() / (h_norm * out.left.col(j).norm()));
  }
  out.pairing_residual = worst;
  return out;
}

double skin_gauge_rho(const ModelSpec& spec, double k_transverse) {
  try {
    const GbzContour contour = gbz_contour(spec, k_transverse, 256);
    if (contour.points.empty()) return 1.0;
    double acc = 0.0;
    for (const auto& pt : contour.points) acc += std::log(std::abs(pt.beta));
    return std::exp(acc / static_cast<double>(contour.points.size()));
  } catch (const std::exception&) {
    return 1.0;
  }
}

int default_window_cells(int n_cells) { return std::max(3, n_cells / 20); }

ModeClassification classify_modes(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                                  int window_cells, double threshold) {
  if (window_cells < 1) throw ValidationError("window_cells must be >= 1");
  if (threshold <= 0.0 || threshold >= 1.0) throw ValidationError("threshold must be in (0, 1)");

  const int n = obc.dim();
  const int n_cells = obc.n_cells;
  ModeClassification cls;
  cls.labels.resize(n);
  cls.boundary_weight.resize(n);

  for (int j = 0; j < n; ++j) {
    double total = 0.0, left_w = 0.0, right_w = 0.0;
    for (int s = 0; s < n; ++s) {
      const double w = std::abs(spec.left(s, j)) * std::abs(spec.right(s, j));
      const int cell = s / 2;
      total += w;
      if (cell < window_cells) left_w += w;
      if (cell >= n_cells - window_cells) right_w += w;
    }
    if (total <= 0.0) total = 1.0;
    left_w /= total;
    right_w /= total;
    cls.boundary_weight[j] = left_w + right_w;
    if (left_w >= threshold && left_w >= right_w)
      cls.labels[j] = ModeLabel::EdgeLeft;
    else if (right_w >= threshold)
      cls.labels[j] = ModeLabel::EdgeRight;
    else
      cls.labels[j] = ModeLabel::Bulk;
  }
  return cls;
}

double biorthogonal_polarization(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                                 const std::vector<int>& mode_indices) {
  if (mode_indices.empty())
    throw ValidationError("polarization needs at least one selected mode");
  const int n = obc.dim();
  const double n_cells = obc.n_cells;
  double p = static_cast<double>(mode_indices.size());
  for (int j : mode_indices) {
    cplx moment = 0.0;
    cplx norm = 0.0;
    for (int s = 0; s < n; ++s) {
      const cplx term = std::conj(spec.left(s, j)) * spec.right(s, j);
      moment += static_cast<double>(s / 2 + 1) * term;
      norm += term;
    }
    p -= (moment / norm).real() / n_cells;
  }
  return p;
}

std::vector<int> select_edge_modes(const ModelSpec& model, const ObcHamiltonian& obc,
                                   const BiorthogonalSpectrum& spec,
                                   const ModeClassification& cls, double k_transverse) {
  std::vector<int> picked;
  for (size_t j = 0; j < cls.labels.size(); ++j)
    if (cls.labels[j] != ModeLabel::Bulk) picked.push_back(static_cast<int>(j));
  if (!picked.empty()) return picked;

  if (model.variant == Variant::ChernYObcA || model.variant == Variant::ChernYObcB) return picked;

  cplx e_edge = -model.delta_onsite;
  if (model.variant == Variant::ChernXObc) e_edge = -model.delta_onsite * std::sin(k_transverse);
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const double dist = std::abs(spec.eigenvalues[j] - e_edge);
    if (dist < best_d) {
      best_d = dist;
      best = static_cast<int>(j);
    }
  }
  picked.push_back(best);
  return picked;
}

}  // namespace nhtb
