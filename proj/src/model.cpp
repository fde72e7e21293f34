#include "nhtb/model.hpp"

#include <cmath>

namespace nhtb {

namespace {
constexpr cplx kI{0.0, 1.0};
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Ssh1d: return "ssh1d";
    case Variant::ChernXObc: return "chern_x_obc";
    case Variant::ChernYObcA: return "chern_y_obc_a";
    case Variant::ChernYObcB: return "chern_y_obc_b";
  }
  return "ssh1d";
}

Variant variant_from_name(const std::string& s) {
  if (s == "ssh1d") return Variant::Ssh1d;
  if (s == "chern_x_obc") return Variant::ChernXObc;
  if (s == "chern_y_obc_a") return Variant::ChernYObcA;
  if (s == "chern_y_obc_b") return Variant::ChernYObcB;
  throw ValidationError("unknown model variant: " + s);
}

bool is_two_dimensional(Variant v) { return v != Variant::Ssh1d; }

DVector d_ssh(const ModelSpec& spec, cplx k) {
  if (spec.variant != Variant::Ssh1d) throw ValidationError("d_ssh needs the ssh1d variant");
  DVector d;
  d.x = spec.t1 + (spec.t2 + spec.t3) * std::cos(k);
  d.y = (spec.t2 - spec.t3) * std::sin(k) + kI * spec.gamma / 2.0;
  d.z = -spec.delta_onsite;
  return d;
}

DVector d_chern_x(const ModelSpec& spec, cplx kx, double ky) {
  if (spec.variant != Variant::ChernXObc)
    throw ValidationError("d_chern_x needs the chern_x_obc variant");
  const double tp = spec.t1 + spec.delta_stagger * std::cos(ky);
  const double tm = spec.t1 - spec.delta_stagger * std::cos(ky);
  DVector d;
  d.x = tp + (tm + spec.t3) * std::cos(kx);
  d.y = (tm - spec.t3) * std::sin(kx) + kI * spec.gamma / 2.0;
  d.z = -spec.delta_onsite * std::sin(ky);
  return d;
}

DVector d_chern_y(const ModelSpec& spec, double kx, cplx ky) {
  if (spec.variant != Variant::ChernYObcA && spec.variant != Variant::ChernYObcB)
    throw ValidationError("d_chern_y needs a chern_y variant");
  const double t1 = spec.t1;
  const double ds = spec.delta_stagger;
  DVector d;
  if (spec.variant == Variant::ChernYObcB) {
    d.x = t1 * (1.0 + std::cos(kx)) + ds * (1.0 - std::cos(kx)) * std::cos(ky);
    d.y = kI * spec.gamma / 2.0 - ds * std::cos(ky);
    d.z = -spec.delta_onsite * std::sin(ky);
  } else {
    d.x = t1 * (1.0 + std::cos(kx)) + ds * (1.0 - std::cos(kx)) * std::cos(ky);
    d.y = t1 * std::sin(kx) + kI * spec.gamma / 2.0 - ds * std::sin(kx) * std::cos(ky);
    d.z = -spec.delta_onsite * std::sin(ky);
  }
  return d;
}

DVector d_vector(const ModelSpec& spec, cplx k_obc, double k_transverse) {
  switch (spec.variant) {
    case Variant::Ssh1d: return d_ssh(spec, k_obc);
    case Variant::ChernXObc: return d_chern_x(spec, k_obc, k_transverse);
    case Variant::ChernYObcA:
    case Variant::ChernYObcB: return d_chern_y(spec, k_transverse, k_obc);
  }
  throw ValidationError("bad variant");
}

Eigen::Matrix2cd bloch_matrix(const DVector& d) {
  Eigen::Matrix2cd h;
  h(0, 0) = d.z;
  h(0, 1) = d.x - kI * d.y;
  h(1, 0) = d.x + kI * d.y;
  h(1, 1) = -d.z;
  return h;
}

cplx pbc_energy(const DVector& d) { return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z); }

namespace {

Eigen::Vector2cd band_vector(const DVector& d, cplx e) {
  const cplx h21 = d.x + kI * d.y;
  Eigen::Vector2cd psi;
  psi << d.z + e, h21;
  if (psi.norm() < 1e-12 && std::abs(e) > 1e-8) {
    const cplx h12 = d.x - kI * d.y;
    psi << h12, e - d.z;
  }
  return psi;
}

}  // namespace

EigenPair pbc_eigenvectors(const DVector& d) {
  const cplx e = pbc_energy(d);
  EigenPair pair;
  pair.psi_plus = band_vector(d, e);
  pair.psi_minus = band_vector(d, -e);
  return pair;
}

TrigForm trig_form(const ModelSpec& spec, double k_transverse) {
  TrigForm f;
  const cplx ig2 = kI * spec.gamma / 2.0;
  switch (spec.variant) {
    case Variant::Ssh1d:
      f.p = {spec.t1, ig2, -spec.delta_onsite};
      f.q = {spec.t2 + spec.t3, 0.0, 0.0};
      f.s = {0.0, spec.t2 - spec.t3, 0.0};
      break;
    case Variant::ChernXObc: {
      const double ky = k_transverse;
      const double tp = spec.t1 + spec.delta_stagger * std::cos(ky);
      const double tm = spec.t1 - spec.delta_stagger * std::cos(ky);
      f.p = {tp, ig2, -spec.delta_onsite * std::sin(ky)};
      f.q = {tm + spec.t3, 0.0, 0.0};
      f.s = {0.0, tm - spec.t3, 0.0};
      break;
    }
    case Variant::ChernYObcA: {
      const double kx = k_transverse;
      f.p = {spec.t1 * (1.0 + std::cos(kx)), spec.t1 * std::sin(kx) + ig2, 0.0};
      f.q = {spec.delta_stagger * (1.0 - std::cos(kx)), -spec.delta_stagger * std::sin(kx), 0.0};
      f.s = {0.0, 0.0, -spec.delta_onsite};
      break;
    }
    case Variant::ChernYObcB: {
      const double kx = k_transverse;
      f.p = {spec.t1 * (1.0 + std::cos(kx)), ig2, 0.0};
      f.q = {spec.delta_stagger * (1.0 - std::cos(kx)), -spec.delta_stagger, 0.0};
      f.s = {0.0, 0.0, -spec.delta_onsite};
      break;
    }
  }
  return f;
}

}  // namespace nhtb
