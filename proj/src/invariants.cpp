#include "nhtb/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "nhtb/gbz.hpp"

namespace nhtb {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_analytic_regime(const ModelSpec& spec, Variant expected) {
  if (spec.variant != expected)
    throw ValidationError("closed form requires the " + variant_name(expected) + " variant");
  if (spec.t3 != 0.0) throw ValidationError("closed form requires t3 = 0");
}

double radius_from_tp(double tp, double gamma) {
  const double den = std::abs(2.0 * tp + gamma);
  if (den < 1e-12) throw NumericalError("singular GBZ radius: |2 t_plus + gamma| vanishes");
  return std::sqrt(std::abs(2.0 * tp - gamma) / den);
}

double wrap_to_pi(double x) {
  while (x > M_PI) x -= 2.0 * M_PI;
  while (x < -M_PI) x += 2.0 * M_PI;
  return x;
}

}  // namespace

double gbz_radius_ssh(const ModelSpec& spec) {
  require_analytic_regime(spec, Variant::Ssh1d);
  return radius_from_tp(spec.t1, spec.gamma);
}

double gbz_radius_chern(const ModelSpec& spec, double ky) {
  require_analytic_regime(spec, Variant::ChernXObc);
  return radius_from_tp(spec.t1 + spec.delta_stagger * std::cos(ky), spec.gamma);
}

EdgeRatios edge_ratios(const ModelSpec& spec, double ky) {
  require_analytic_regime(spec, Variant::ChernXObc);
  const double tp = spec.t1 + spec.delta_stagger * std::cos(ky);
  const double tm = spec.t1 - spec.delta_stagger * std::cos(ky);
  if (std::abs(tm) < 1e-12)
    throw NumericalError("edge ratios singular: t_minus vanishes (flat-band direction)");
  EdgeRatios r;
  r.r_R = -(tp - spec.gamma / 2.0) / tm;
  r.r_L = -(tp + spec.gamma / 2.0) / tm;
  r.product_abs = std::abs(r.r_L * r.r_R);
  return r;
}

std::vector<double> obc_gap_closings(const ModelSpec& spec) {
  require_analytic_regime(spec, Variant::ChernXObc);
  const double t1 = spec.t1, ds = spec.delta_stagger, g = spec.gamma;
  if (ds == 0.0 || t1 == 0.0) throw ValidationError("gap-closing formulas need t1 != 0, delta_stagger != 0");

  std::vector<double> cos_values;
  {
    const double c = g * g / (16.0 * ds * t1);
    const double tp = t1 + ds * c;
    if (std::abs(c) <= 1.0 && tp * tp >= g * g / 4.0) cos_values.push_back(c);
  }
  const double rad = g * g / 8.0 - t1 * t1;
  if (rad >= 0.0) {
    for (const double sign : {1.0, -1.0}) {
      const double c = sign * std::sqrt(rad) / ds;
      const double tp = t1 + ds * c;
      if (std::abs(c) <= 1.0 && tp * tp <= g * g / 4.0) cos_values.push_back(c);
    }
  }

  std::vector<double> ky_values;
  for (const double c : cos_values) {
    const double a = std::acos(std::clamp(c, -1.0, 1.0));
    ky_values.push_back(a);
    const double mirrored = 2.0 * M_PI - a;
    if (std::abs(mirrored - a) > 1e-12 && std::abs(mirrored - 2.0 * M_PI) > 1e-12)
      ky_values.push_back(mirrored);
  }
  std::sort(ky_values.begin(), ky_values.end());
  ky_values.erase(std::unique(ky_values.begin(), ky_values.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  ky_values.end());
  return ky_values;
}

AnalyticObcBand analytic_obc_band(const ModelSpec& spec, double ky, double theta) {
  const double radius = gbz_radius_chern(spec, ky);
  // the standing-wave pair (beta, partner) multiplies to c_{-1}/c_{+1}, so
  // theta counts off the complex square root of that ratio, not |Gamma|
  const auto c = laurent_e2(trig_form(spec, ky));
  const cplx beta = std::sqrt(c[1] / c[3]) * std::exp(kI * theta);
  const cplx k = -kI * std::log(beta);
  const DVector d = d_chern_x(spec, k, ky);
  AnalyticObcBand band;
  band.theta = theta;
  band.energy = pbc_energy(d);
  band.eta = {d.x, d.y, d.z};
  band.gamma_radius = radius;
  return band;
}

cplx analytic_obc_energy(const ModelSpec& spec, double ky, double theta) {
  return analytic_obc_band(spec, ky, theta).energy;
}

Eigen::VectorXcd bulk_state_ansatz(const ModelSpec& spec, double ky, double theta, int n_cells) {
  require_analytic_regime(spec, Variant::ChernXObc);
  if (n_cells < 2) throw ValidationError("n_cells must be >= 2");
  const double j_real = theta * n_cells / M_PI;
  if (std::abs(j_real - std::round(j_real)) > 1e-9 || std::round(j_real) < 1.0 ||
      std::round(j_real) > n_cells - 1)
    throw ValidationError("theta must equal pi j / N with integer j in [1, N-1]");

  const auto c = laurent_e2(trig_form(spec, ky));
  if (std::abs(c[1]) < 1e-12 || std::abs(c[3]) < 1e-12)
    throw NumericalError("bulk ansatz singular: a first-order Laurent coefficient vanishes");

  const cplx radius = std::sqrt(c[1] / c[3]);
  const cplx beta1 = radius * std::exp(kI * theta);
  const cplx beta2 = radius * std::exp(-kI * theta);

  const auto vec_at = [&](cplx beta) {
    const DVector d = d_chern_x(spec, -kI * std::log(beta), ky);
    return pbc_eigenvectors(d).psi_plus;
  };
  const Eigen::Vector2cd psi1 = vec_at(beta1);
  const Eigen::Vector2cd psi2 = vec_at(beta2);

  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(2 * n_cells);
  cplx b1n = 1.0, b2n = 1.0;
  for (int n = 1; n <= n_cells; ++n) {
    b1n *= beta1;
    b2n *= beta2;
    state.segment<2>(2 * (n - 1)) = b1n * psi1 * psi2(1) - b2n * psi2 * psi1(1);
  }
  const double norm = state.norm();
  if (norm < 1e-300) throw NumericalError("bulk ansatz degenerated to the zero vector");
  return state / norm;
}

AnalyticBp analytic_bp(const ModelSpec& spec, double ky, int n_cells) {
  if (spec.variant != Variant::Ssh1d && spec.variant != Variant::ChernXObc)
    throw ValidationError("analytic polarization covers the x-open variants only");
  if (spec.t3 != 0.0) throw ValidationError("closed form requires t3 = 0");
  if (n_cells < 2) throw ValidationError("n_cells must be >= 2");

  double tp = spec.t1, tm = spec.t2;
  if (spec.variant == Variant::ChernXObc) {
    tp = spec.t1 + spec.delta_stagger * std::cos(ky);
    tm = spec.t1 - spec.delta_stagger * std::cos(ky);
  }
  if (std::abs(tm) < 1e-12) {
    // decoupled-dimer limit: the lone midgap site sits in the last cell
    AnalyticBp out;
    out.value = 0.0;
    return out;
  }
  const double r_r = -(tp - spec.gamma / 2.0) / tm;
  const double r_l = -(tp + spec.gamma / 2.0) / tm;
  const double x = r_l * r_r;
  const double n = n_cells;

  AnalyticBp out;
  if (std::abs(std::abs(x) - 1.0) < 1e-14) {
    out.value = 1.0 - (n + 1.0) / (2.0 * n);
    out.delocalized = true;
    return out;
  }

  const auto mean_cell = [&](double y) {
    const double yn = std::pow(y, n);
    return (1.0 - (n + 1.0) * yn + n * yn * y) / ((1.0 - y) * (1.0 - yn));
  };
  const double mean = std::abs(x) < 1.0 ? mean_cell(x) : (n + 1.0 - mean_cell(1.0 / x));
  out.value = 1.0 - mean / n;
  return out;
}

VorticityResult vorticity(const std::vector<cplx>& energies_1,
                          const std::vector<cplx>& energies_2) {
  if (energies_1.size() != energies_2.size()) throw ValidationError("sample lists differ in size");
  const size_t n = energies_1.size();
  if (n < 64) throw ValidationError("loop needs at least 64 samples");

  VorticityResult out;
  out.unwrapped_phase.reserve(n + 1);
  double phase = 0.0;
  double prev_arg = 0.0;
  for (size_t j = 0; j <= n; ++j) {
    const size_t idx = j % n;
    const cplx diff = energies_1[idx] - energies_2[idx];
    if (std::abs(diff) < 1e-12) throw NumericalError("EP on the loop: E1 - E2 vanishes at a sample");
    const double a = std::arg(diff);
    if (j == 0) {
      phase = a;
    } else {
      double step = wrap_to_pi(a - prev_arg);
      // the band difference is defined up to a global sign, so the loop may
      // close onto -diff; match the final step modulo pi
      if (j == n && std::abs(step) > M_PI / 2.0) step -= std::copysign(M_PI, step);
      if (std::abs(step) > M_PI / 2.0)
        throw NumericalError("phase step exceeds pi/2: loop sampling too coarse");
      phase += step;
    }
    prev_arg = a;
    out.unwrapped_phase.push_back(phase);
  }
  out.nu_12 = (out.unwrapped_phase.back() - out.unwrapped_phase.front()) / (2.0 * M_PI);
  return out;
}

VorticityResult vorticity_on_loop(const ModelSpec& spec, double center_kx, double center_ky,
                                  double radius, int n_initial) {
  if (!is_two_dimensional(spec.variant))
    throw ValidationError("momentum loops need a two-dimensional variant");
  int n = std::max(n_initial, 64);
  while (true) {
    std::vector<cplx> e1(n), e2(n);
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * M_PI * j / n;
      const double kx = center_kx + radius * std::cos(t);
      const double ky = center_ky + radius * std::sin(t);
      const DVector d = spec.variant == Variant::ChernXObc ? d_chern_x(spec, kx, ky)
                                                           : d_chern_y(spec, kx, ky);
      cplx e = pbc_energy(d);
      if (j > 0 && std::abs(e - e1[j - 1]) > std::abs(-e - e1[j - 1])) e = -e;
      e1[j] = e;
      e2[j] = -e;
    }
    try {
      return vorticity(e1, e2);
    } catch (const NumericalError&) {
      if (n >= (1 << 16)) throw;
      n *= 2;
    }
  }
}

std::vector<std::pair<double, double>> pbc_ep_locations(const ModelSpec& spec) {
  require_analytic_regime(spec, Variant::ChernXObc);
  const double g = spec.gamma, t1 = spec.t1, ds = spec.delta_stagger, d0 = spec.delta_onsite;

  std::vector<std::pair<double, double>> points;
  const auto add_branch = [&](double kx, double num, double den) {
    if (std::abs(den) < 1e-12) throw NumericalError("singular EP condition: denominator vanishes");
    const double rad = num / den;
    if (rad < 0.0 || rad > 1.0) return;
    for (const double sv : {std::sqrt(rad), -std::sqrt(rad)}) {
      for (double ky : {std::asin(sv), M_PI - std::asin(sv)}) {
        if (ky < 0.0) ky += 2.0 * M_PI;
        const DVector d = d_chern_x(spec, kx, ky);
        // |E| ~ sqrt(eps) at an exact root, so the filter sits well above that
        if (std::abs(pbc_energy(d)) < 1e-6) points.emplace_back(kx, ky);
      }
    }
  };
  add_branch(0.0, g * g / 4.0 - 4.0 * t1 * t1, d0 * d0);
  add_branch(M_PI, g * g / 4.0 - 4.0 * ds * ds, d0 * d0 - 4.0 * ds * ds);

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& a, const auto& b) {
                             return std::abs(a.first - b.first) < 1e-10 &&
                                    std::abs(a.second - b.second) < 1e-10;
                           }),
               points.end());
  return points;
}

}  // namespace nhtb
