#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nhtb {

using cplx = std::complex<double>;

enum class Variant { Ssh1d, ChernXObc, ChernYObcA, ChernYObcB };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

/// Couplings for all model variants. delta_onsite is the onsite (dz) scale,
/// delta_stagger the interchain stagger of the 2d models.
struct ModelSpec {
  Variant variant = Variant::Ssh1d;
  double t1 = 1.0;
  double t2 = 1.0;
  double t3 = 0.0;
  double gamma = 0.0;
  double delta_onsite = 0.0;
  double delta_stagger = 0.0;
};

bool is_two_dimensional(Variant v);

struct DVector {
  cplx x{0.0, 0.0};
  cplx y{0.0, 0.0};
  cplx z{0.0, 0.0};
};

DVector d_ssh(const ModelSpec& spec, cplx k);
DVector d_chern_x(const ModelSpec& spec, cplx kx, double ky);
DVector d_chern_y(const ModelSpec& spec, double kx, cplx ky);

/// d(k) with k complex along the variant's open direction and the transverse
/// momentum real (ignored for Ssh1d).
DVector d_vector(const ModelSpec& spec, cplx k_obc, double k_transverse = 0.0);

Eigen::Matrix2cd bloch_matrix(const DVector& d);

/// Principal square root of dx^2 + dy^2 + dz^2.
cplx pbc_energy(const DVector& d);

struct EigenPair {
  Eigen::Vector2cd psi_plus;
  Eigen::Vector2cd psi_minus;
};

/// Unnormalized eigenvectors (dz +- E, dx + i dy). The degenerate form falls
/// back to basis vectors when the primary form vanishes but E does not.
EigenPair pbc_eigenvectors(const DVector& d);

/// d(k) = p + q cos k + s sin k along the open direction, at fixed transverse
/// momentum. Component order follows DVector (x, y, z).
struct TrigForm {
  std::array<cplx, 3> p{};
  std::array<cplx, 3> q{};
  std::array<cplx, 3> s{};
};

TrigForm trig_form(const ModelSpec& spec, double k_transverse = 0.0);

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nhtb
