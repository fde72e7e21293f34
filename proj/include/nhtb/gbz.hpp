#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nhtb/model.hpp"

namespace nhtb {

/// Polynomial in beta, ascending coefficients.
struct CharPoly {
  std::vector<cplx> coefficients;
  int degree = 0;
  int pole_order = 0;
};

/// Laurent coefficients c_{-2}..c_{+2} of E^2(beta) for the trig-form model.
std::array<cplx, 5> laurent_e2(const TrigForm& f);

cplx e2_at(const std::array<cplx, 5>& c, cplx beta);

/// Condition beta^p [E^2(beta) - E^2(beta e^{i phi})] = 0 with the scalar
/// phi-only prefactor cancelled; beta-dependent factors are kept.
CharPoly phi_polynomial(const ModelSpec& spec, std::optional<double> transverse_k, double phi);

/// Companion-matrix roots refined by one Newton step.
std::vector<cplx> poly_roots(const CharPoly& p);

struct GbzContour {
  struct Point {
    double phi = 0.0;
    cplx beta{0.0, 0.0};
  };
  std::vector<Point> points;  // sorted by arg beta
  double closure_gap = 0.0;
};

/// phi sweep over a uniform grid in (0, 2pi). A root beta is admitted when it
/// and its partner beta e^{i phi} occupy the middle magnitude positions among
/// the roots of beta^p (E^2(beta') - E^2) at E^2 = E^2(beta).
GbzContour gbz_contour(const ModelSpec& spec, std::optional<double> transverse_k, int n_phi,
                       double admissibility_tol = 1e-6);

struct GbzBandPoint {
  cplx beta;
  cplx e_plus;
  cplx e_minus;
};

std::vector<GbzBandPoint> obc_bands_from_gbz(const ModelSpec& spec, const GbzContour& contour,
                                             std::optional<double> transverse_k);

struct NonBlochWinding {
  double nu_total = 0.0;
  std::array<double, 2> nu_band{0.0, 0.0};
  double im_residual = 0.0;  // accumulated Zak phase off the real axis
  int n_points = 0;
};

/// Discrete biorthogonal Berry phase per band along the closed contour,
/// bands tracked by nearest continuation. right_only drops the left
/// eigenvectors in favor of conjugated right ones for comparison runs.
NonBlochWinding non_bloch_winding(const ModelSpec& spec, const GbzContour& contour,
                                  std::optional<double> transverse_k, bool right_only = false);

/// Winding at the Richardson-paired resolutions 2 nu(2n) - nu(n); removes the
/// O(1/n) discretization term of the discrete log product.
NonBlochWinding non_bloch_winding_extrapolated(const ModelSpec& spec,
                                               std::optional<double> transverse_k, int n_phi,
                                               bool right_only = false);

}  // namespace nhtb
