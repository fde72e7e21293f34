#include "nhtb/gbz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhtb {

namespace {

constexpr cplx kI{0.0, 1.0};

struct LaurentOrders {
  int pole = 0;  // largest m with c_{-m} != 0
  int top = 0;   // largest m with c_{+m} != 0
};

LaurentOrders orders(const std::array<cplx, 5>& c) {
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(scale, 1.0);
  LaurentOrders o;
  if (std::abs(c[0]) > tol) o.pole = 2;
  else if (std::abs(c[1]) > tol) o.pole = 1;
  if (std::abs(c[4]) > tol) o.top = 2;
  else if (std::abs(c[3]) > tol) o.top = 1;
  return o;
}

cplx momentum_of(cplx beta) { return -kI * std::log(beta); }

}  // namespace

std::array<cplx, 5> laurent_e2(const TrigForm& f) {
  cplx c0 = 0.0, a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
  for (int c = 0; c < 3; ++c) {
    const cplx p = f.p[c], q = f.q[c], s = f.s[c];
    c0 += p * p + 0.5 * (q * q + s * s);
    a1 += 2.0 * p * q;
    b1 += 2.0 * p * s;
    a2 += 0.5 * (q * q - s * s);
    b2 += q * s;
  }
  return {0.5 * (a2 + kI * b2), 0.5 * (a1 + kI * b1), c0, 0.5 * (a1 - kI * b1),
          0.5 * (a2 - kI * b2)};
}

cplx e2_at(const std::array<cplx, 5>& c, cplx beta) {
  const cplx bi = 1.0 / beta;
  return c[0] * bi * bi + c[1] * bi + c[2] + c[3] * beta + c[4] * beta * beta;
}

CharPoly phi_polynomial(const ModelSpec& spec, std::optional<double> transverse_k, double phi) {
  if (!(phi > 0.0 && phi < 2.0 * M_PI)) throw ValidationError("phi must lie in (0, 2pi)");
  const TrigForm f = trig_form(spec, transverse_k.value_or(0.0));
  const auto c = laurent_e2(f);
  const LaurentOrders o = orders(c);
  if (o.pole == 0 && o.top == 0)
    throw ValidationError("degenerate couplings: the phi condition is identically zero");

  CharPoly poly;
  poly.pole_order = o.pole;
  poly.degree = o.pole + o.top;
  poly.coefficients.assign(poly.degree + 1, cplx{0.0, 0.0});
  for (int j = 0; j <= poly.degree; ++j) {
    const int m = j - o.pole;
    if (m == 0) continue;
    poly.coefficients[j] = c[m + 2] * (1.0 - std::exp(kI * (static_cast<double>(m) * phi)));
  }
  return poly;
}

std::vector<cplx> poly_roots(const CharPoly& p) {
  std::vector<cplx> a = p.coefficients;
  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw ValidationError("zero polynomial");

  while (a.size() > 1 && std::abs(a.back()) < 1e-14 * scale) a.pop_back();
  size_t lead_zeros = 0;
  while (lead_zeros + 1 < a.size() && std::abs(a[lead_zeros]) < 1e-14 * scale) ++lead_zeros;

  const int deg = static_cast<int>(a.size()) - 1 - static_cast<int>(lead_zeros);
  std::vector<cplx> roots(lead_zeros, cplx{0.0, 0.0});
  if (deg < 1) return roots;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  const cplx lead = a.back();
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -a[lead_zeros + i] / lead;
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

  for (int i = 0; i < deg; ++i) {
    cplx r = solver.eigenvalues()(i);
    cplx val{0.0, 0.0}, der{0.0, 0.0};
    for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
      der = der * r + val;
      val = val * r + a[j];
    }
    if (std::abs(der) > 1e-300) {
      const cplx refined = r - val / der;
      cplx val_next{0.0, 0.0};
      for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) val_next = val_next * refined + a[j];
      if (std::abs(val_next) <= std::abs(val)) r = refined;
    }
    roots.push_back(r);
  }
  return roots;
}

namespace {

/// Roots beta' of beta'^p (E^2(beta') - e2) = 0, ascending coefficients
/// c_{-p}..c_{top} with the constant term shifted by -e2.
std::vector<cplx> char_roots_at(const std::array<cplx, 5>& c, const LaurentOrders& o, cplx e2) {
  CharPoly poly;
  poly.pole_order = o.pole;
  poly.degree = o.pole + o.top;
  poly.coefficients.assign(poly.degree + 1, cplx{0.0, 0.0});
  for (int j = 0; j <= poly.degree; ++j) {
    const int m = j - o.pole;
    poly.coefficients[j] = c[m + 2];
    if (m == 0) poly.coefficients[j] -= e2;
  }
  return poly_roots(poly);
}

}  // namespace

GbzContour gbz_contour(const ModelSpec& spec, std::optional<double> transverse_k, int n_phi,
                       double admissibility_tol) {
  if (n_phi < 64) throw ValidationError("n_phi must be >= 64");
  const TrigForm f = trig_form(spec, transverse_k.value_or(0.0));
  const auto c = laurent_e2(f);
  const LaurentOrders o = orders(c);

  std::vector<GbzContour::Point> admitted;
  double min_gap = std::numeric_limits<double>::max();

  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * M_PI * (j + 0.5) / n_phi;
    const CharPoly poly = phi_polynomial(spec, transverse_k, phi);
    for (const cplx beta : poly_roots(poly)) {
      const double mag = std::abs(beta);
      if (mag < 1e-12) continue;
      const cplx e2 = e2_at(c, beta);
      std::vector<cplx> cr = char_roots_at(c, o, e2);
      std::vector<double> mags(cr.size());
      std::transform(cr.begin(), cr.end(), mags.begin(), [](cplx b) { return std::abs(b); });
      std::sort(mags.begin(), mags.end());
      const size_t m = mags.size() / 2;
      if (m == 0 || mags.size() < 2) continue;
      const double gap =
          std::max(std::abs(mags[m - 1] - mag), std::abs(mags[m] - mag)) / mag;
      min_gap = std::min(min_gap, gap);
      if (gap < admissibility_tol) {
        admitted.push_back({phi, beta});
        // the partner pairs back to beta at the complementary angle
        admitted.push_back({2.0 * M_PI - phi, beta * std::exp(kI * phi)});
      }
    }
  }

  if (admitted.empty())
    throw NumericalError("empty GBZ contour: no phi passed admissibility (minimal relative "
                         "magnitude gap " +
                         std::to_string(min_gap) + ")");

  std::sort(admitted.begin(), admitted.end(), [](const auto& a, const auto& b) {
    return std::arg(a.beta) < std::arg(b.beta);
  });
  GbzContour contour;
  for (const auto& pt : admitted) {
    if (!contour.points.empty() && std::abs(pt.beta - contour.points.back().beta) < 1e-9) continue;
    contour.points.push_back(pt);
  }
  if (contour.points.size() > 1 &&
      std::abs(contour.points.front().beta - contour.points.back().beta) < 1e-9)
    contour.points.pop_back();
  contour.closure_gap =
      std::abs(contour.points.front().beta - contour.points.back().beta);
  return contour;
}

std::vector<GbzBandPoint> obc_bands_from_gbz(const ModelSpec& spec, const GbzContour& contour,
                                             std::optional<double> transverse_k) {
  if (contour.points.empty()) throw ValidationError("empty contour");
  std::vector<GbzBandPoint> bands;
  bands.reserve(contour.points.size());
  for (const auto& pt : contour.points) {
    const DVector d = d_vector(spec, momentum_of(pt.beta), transverse_k.value_or(0.0));
    const cplx e = pbc_energy(d);
    bands.push_back({pt.beta, e, -e});
  }
  return bands;
}

NonBlochWinding non_bloch_winding(const ModelSpec& spec, const GbzContour& contour,
                                  std::optional<double> transverse_k, bool right_only) {
  const size_t n = contour.points.size();
  if (n < 128) throw ValidationError("contour must have at least 128 points");

  const double k_perp = transverse_k.value_or(0.0);
  std::vector<DVector> ds(n);
  std::vector<cplx> e1(n);
  for (size_t j = 0; j < n; ++j) {
    ds[j] = d_vector(spec, momentum_of(contour.points[j].beta), k_perp);
    cplx e = pbc_energy(ds[j]);
    if (std::abs(e) < 1e-10)
      throw NumericalError("gap closed on the contour: band sorting is ambiguous");
    if (j > 0 && std::abs(e - e1[j - 1]) > std::abs(-e - e1[j - 1])) e = -e;
    e1[j] = e;
  }

  NonBlochWinding w;
  w.n_points = static_cast<int>(n);
  double max_re = 0.0;
  for (int band = 0; band < 2; ++band) {
    cplx acc{0.0, 0.0};
    for (size_t j = 0; j < n; ++j) {
      const size_t jn = (j + 1) % n;
      const cplx ej = band == 0 ? e1[j] : -e1[j];
      const cplx ejn = band == 0 ? e1[jn] : -e1[jn];
      const cplx h21_j = ds[j].x + kI * ds[j].y;
      const cplx h21_n = ds[jn].x + kI * ds[jn].y;
      cplx cross, self;
      if (right_only) {
        cross = std::conj(ds[j].z + ej) * (ds[jn].z + ejn) + std::conj(h21_j) * h21_n;
        self = std::conj(ds[j].z + ej) * (ds[j].z + ej) + std::conj(h21_j) * h21_j;
      } else {
        const cplx h12_j = ds[j].x - kI * ds[j].y;
        cross = (ds[j].z + ej) * (ds[jn].z + ejn) + h12_j * h21_n;
        self = (ds[j].z + ej) * (ds[j].z + ej) + h12_j * h21_j;
      }
      if (std::abs(cross) < 1e-300 || std::abs(self) < 1e-300)
        throw NumericalError("vanishing overlap in the winding product");
      acc += std::log(cross / self);
    }
    w.nu_band[band] = acc.imag() / (2.0 * M_PI);
    max_re = std::max(max_re, std::abs(acc.real()));
  }
  w.nu_total = w.nu_band[0] + w.nu_band[1];
  w.im_residual = max_re;
  return w;
}

NonBlochWinding non_bloch_winding_extrapolated(const ModelSpec& spec,
                                               std::optional<double> transverse_k, int n_phi,
                                               bool right_only) {
  const GbzContour coarse = gbz_contour(spec, transverse_k, n_phi);
  const GbzContour fine = gbz_contour(spec, transverse_k, 2 * n_phi);
  const NonBlochWinding wc = non_bloch_winding(spec, coarse, transverse_k, right_only);
  const NonBlochWinding wf = non_bloch_winding(spec, fine, transverse_k, right_only);
  NonBlochWinding w;
  w.n_points = wf.n_points;
  for (int band = 0; band < 2; ++band)
    w.nu_band[band] = 2.0 * wf.nu_band[band] - wc.nu_band[band];
  w.nu_total = w.nu_band[0] + w.nu_band[1];
  w.im_residual = std::abs(2.0 * wf.im_residual - wc.im_residual);
  return w;
}

}  // namespace nhtb
