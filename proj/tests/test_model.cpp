#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "nhtb/model.hpp"

using nhtb::cplx;
using nhtb::DVector;
using nhtb::ModelSpec;
using nhtb::Variant;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cdist(cplx a, cplx b) { return std::abs(a - b); }

double dvec_dist(const DVector& a, const DVector& b) {
  return std::max({cdist(a.x, b.x), cdist(a.y, b.y), cdist(a.z, b.z)});
}

ModelSpec ssh(double t1, double t2, double t3, double gamma, double delta) {
  ModelSpec s;
  s.variant = Variant::Ssh1d;
  s.t1 = t1;
  s.t2 = t2;
  s.t3 = t3;
  s.gamma = gamma;
  s.delta_onsite = delta;
  return s;
}

ModelSpec chern(Variant v, double t1, double delta_stagger, double t3, double gamma,
                double delta) {
  ModelSpec s;
  s.variant = v;
  s.t1 = t1;
  s.t3 = t3;
  s.gamma = gamma;
  s.delta_onsite = delta;
  s.delta_stagger = delta_stagger;
  return s;
}

DVector random_d(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  DVector d;
  d.x = cplx(u(rng), u(rng));
  d.y = cplx(u(rng), u(rng));
  d.z = cplx(u(rng), u(rng));
  return d;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  for (Variant v : {Variant::Ssh1d, Variant::ChernXObc, Variant::ChernYObcA, Variant::ChernYObcB}) {
    CHECK(nhtb::variant_from_name(nhtb::variant_name(v)) == v);
  }
  CHECK(nhtb::variant_name(Variant::Ssh1d) == "ssh1d");
  CHECK(nhtb::variant_name(Variant::ChernXObc) == "chern_x_obc");
  CHECK(nhtb::variant_name(Variant::ChernYObcA) == "chern_y_obc_a");
  CHECK(nhtb::variant_name(Variant::ChernYObcB) == "chern_y_obc_b");
  CHECK_THROWS_AS(nhtb::variant_from_name("ssh2d"), nhtb::ValidationError);
  CHECK(!nhtb::is_two_dimensional(Variant::Ssh1d));
  CHECK(nhtb::is_two_dimensional(Variant::ChernXObc));
  CHECK(nhtb::is_two_dimensional(Variant::ChernYObcA));
  CHECK(nhtb::is_two_dimensional(Variant::ChernYObcB));
}

TEST_CASE("d_ssh hand substitutions") {
  DVector d = nhtb::d_ssh(ssh(0, 1, 0, 0, 0), 0.0);
  CHECK(dvec_dist(d, DVector{1.0, 0.0, 0.0}) < 1e-15);

  d = nhtb::d_ssh(ssh(1, 1, 0, 3, 0), kPi / 2);
  CHECK(dvec_dist(d, DVector{1.0, cplx(1.0, 1.5), 0.0}) < 1e-15);

  d = nhtb::d_ssh(ssh(2, 1, 0.2, 4.0 / 3.0, 1), 0.0);
  CHECK(dvec_dist(d, DVector{3.2, cplx(0.0, 2.0 / 3.0), -1.0}) < 1e-15);
}

TEST_CASE("d_ssh accepts complex momentum") {
  // beta = 1/2, k = -i ln beta: cos k = 5/4, sin k = 3i/4
  cplx k = cplx(0.0, 1.0) * std::log(2.0);
  DVector d = nhtb::d_ssh(ssh(1, 1, 0, 0, 0), k);
  CHECK(cdist(d.x, 2.25) < 1e-14);
  CHECK(cdist(d.y, cplx(0.0, 0.75)) < 1e-14);
}

TEST_CASE("d_chern_x hand substitutions") {
  DVector d = nhtb::d_chern_x(chern(Variant::ChernXObc, 1, 1, 0, 3, 1), 0.0, 0.0);
  CHECK(dvec_dist(d, DVector{2.0, cplx(0.0, 1.5), 0.0}) < 1e-15);

  // t+ = t- = 2 at ky = pi/2, so dx = 2 - (2 + 1/2)
  d = nhtb::d_chern_x(chern(Variant::ChernXObc, 2, 2, 0.5, 0.8, 0.25), kPi, kPi / 2);
  CHECK(dvec_dist(d, DVector{-0.5, cplx(0.0, 0.4), -0.25}) < 1e-14);
}

TEST_CASE("d_chern_x dz vanishes at ky=0") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    ModelSpec s = chern(Variant::ChernXObc, u(rng), u(rng), u(rng), u(rng), u(rng));
    DVector d = nhtb::d_chern_x(s, u(rng), 0.0);
    CHECK(cdist(d.z, 0.0) < 1e-15);
  }
}

TEST_CASE("d_chern_y hand substitutions") {
  ModelSpec b = chern(Variant::ChernYObcB, 1, 1.75, 0, 0.4, 0.1);
  DVector d = nhtb::d_chern_y(b, 0.0, 0.0);
  CHECK(dvec_dist(d, DVector{2.0, cplx(-1.75, 0.2), 0.0}) < 1e-15);

  ModelSpec a = chern(Variant::ChernYObcA, 1, 1.75, 0, 0.4, 0.1);
  d = nhtb::d_chern_y(a, kPi, kPi);
  CHECK(dvec_dist(d, DVector{-3.5, cplx(0.0, 0.2), 0.0}) < 1e-14);
}

TEST_CASE("d_chern_y dx is 2 t1 at kx=0 for any ky") {
  ModelSpec a = chern(Variant::ChernYObcA, 1.3, 0.7, 0, 1.1, 0.4);
  ModelSpec b = a;
  b.variant = Variant::ChernYObcB;
  for (double ky : {0.1, 1.0, 2.5, 5.0}) {
    CHECK(cdist(nhtb::d_chern_y(a, 0.0, ky).x, 2.6) < 1e-14);
    CHECK(cdist(nhtb::d_chern_y(b, 0.0, ky).x, 2.6) < 1e-14);
  }
}

TEST_CASE("chern_y_obc_a is a regrouping of chern_x_obc at t3=0") {
  ModelSpec a = chern(Variant::ChernYObcA, 1.2, 0.8, 0, 1.7, 0.6);
  ModelSpec x = a;
  x.variant = Variant::ChernXObc;
  for (int i = 0; i < 24; ++i) {
    for (int j = 0; j < 24; ++j) {
      double kx = 2 * kPi * i / 24.0;
      double ky = 2 * kPi * j / 24.0;
      DVector dy = nhtb::d_chern_y(a, kx, ky);
      DVector dx = nhtb::d_chern_x(x, kx, ky);
      CHECK(dvec_dist(dy, dx) < 1e-12);
    }
  }
}

TEST_CASE("variant mismatch is rejected") {
  ModelSpec s = ssh(1, 1, 0, 0, 0);
  CHECK_THROWS_AS(nhtb::d_chern_x(s, 0.0, 0.0), nhtb::ValidationError);
  CHECK_THROWS_AS(nhtb::d_chern_y(s, 0.0, 0.0), nhtb::ValidationError);
  ModelSpec c = chern(Variant::ChernXObc, 1, 1, 0, 0, 0);
  CHECK_THROWS_AS(nhtb::d_ssh(c, 0.0), nhtb::ValidationError);
}

TEST_CASE("bloch_matrix pads Pauli components") {
  Eigen::Matrix2cd h = nhtb::bloch_matrix(DVector{0.0, 0.0, 0.0});
  CHECK(h.norm() < 1e-15);

  h = nhtb::bloch_matrix(DVector{1.0, 0.0, 0.0});
  CHECK(cdist(h(0, 1), 1.0) < 1e-15);
  CHECK(cdist(h(1, 0), 1.0) < 1e-15);
  CHECK(cdist(h(0, 0), 0.0) < 1e-15);

  // imaginary sigma_y coefficient: h12 = +1/2, h21 = -1/2
  h = nhtb::bloch_matrix(DVector{0.0, cplx(0.0, 0.5), 0.0});
  CHECK(cdist(h(0, 1), 0.5) < 1e-15);
  CHECK(cdist(h(1, 0), -0.5) < 1e-15);
  CHECK(cdist(h.trace(), 0.0) < 1e-15);
}

TEST_CASE("pbc_energy principal root") {
  CHECK(cdist(nhtb::pbc_energy(DVector{3.0, 4.0, 0.0}), 5.0) < 1e-14);
  CHECK(cdist(nhtb::pbc_energy(DVector{1.0, cplx(0.0, 1.0), 0.0}), 0.0) < 1e-15);
}

TEST_CASE("pbc gap closes on the kx=0 exceptional ring") {
  // sin^2 ky = (gamma^2/4 - 4 t1^2) / delta^2 must land in [0, 1]
  ModelSpec s = chern(Variant::ChernXObc, 0.5, 0.9, 0, 2.2, 1.0);
  double rad = (s.gamma * s.gamma / 4 - 4 * s.t1 * s.t1) / (s.delta_onsite * s.delta_onsite);
  REQUIRE(rad >= 0.0);
  REQUIRE(rad <= 1.0);
  double ky = std::asin(std::sqrt(rad));
  // |E| = sqrt(|E^2|) turns the ~1e-16 roundoff of E^2 into ~1e-8
  CHECK(cdist(nhtb::pbc_energy(nhtb::d_chern_x(s, 0.0, ky)), 0.0) < 1e-7);
}

TEST_CASE("pbc_eigenvectors fixed form and degenerate fallback") {
  nhtb::EigenPair p = nhtb::pbc_eigenvectors(DVector{1.0, 0.0, 0.0});
  CHECK(cdist(p.psi_plus(0), 1.0) < 1e-15);
  CHECK(cdist(p.psi_plus(1), 1.0) < 1e-15);
  CHECK(cdist(p.psi_minus(0), -1.0) < 1e-15);
  CHECK(cdist(p.psi_minus(1), 1.0) < 1e-15);

  // sigma_z: the minus branch collapses, the fallback restores the basis vector
  p = nhtb::pbc_eigenvectors(DVector{0.0, 0.0, 1.0});
  CHECK(cdist(p.psi_plus(0), 2.0) < 1e-15);
  CHECK(cdist(p.psi_plus(1), 0.0) < 1e-15);
  CHECK(p.psi_minus.norm() > 1e-12);
  CHECK(cdist(p.psi_minus(0), 0.0) < 1e-15);

  // exceptional point: both vectors coalesce to zero and stay there
  p = nhtb::pbc_eigenvectors(DVector{1.0, cplx(0.0, 1.0), 0.0});
  CHECK(p.psi_plus.norm() < 1e-15);
  CHECK(p.psi_minus.norm() < 1e-15);
}

TEST_CASE("bloch eigenvalues come in +-E pairs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    DVector d = random_d(rng);
    cplx e = nhtb::pbc_energy(d);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(nhtb::bloch_matrix(d));
    cplx a = es.eigenvalues()(0);
    cplx b = es.eigenvalues()(1);
    double tol = 1e-12 * std::max(1.0, std::abs(e));
    if (cdist(a, e) > cdist(b, e)) std::swap(a, b);
    CHECK(cdist(a, e) < tol);
    CHECK(cdist(b, -e) < tol);
  }
}

TEST_CASE("eigenvector residuals") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    DVector d = random_d(rng);
    cplx e = nhtb::pbc_energy(d);
    if (std::abs(e) <= 1e-8) continue;
    Eigen::Matrix2cd h = nhtb::bloch_matrix(d);
    nhtb::EigenPair p = nhtb::pbc_eigenvectors(d);
    double scale = h.norm();
    CHECK((h * p.psi_plus - e * p.psi_plus).norm() < 1e-10 * scale * p.psi_plus.norm());
    CHECK((h * p.psi_minus + e * p.psi_minus).norm() < 1e-10 * scale * p.psi_minus.norm());
  }
}

TEST_CASE("hermitian limit at gamma=0 and real momentum") {
  ModelSpec s1 = ssh(0.7, 1.0, 0.3, 0, 0.4);
  ModelSpec sx = chern(Variant::ChernXObc, 1.1, 0.6, 0.2, 0, 0.8);
  ModelSpec sa = chern(Variant::ChernYObcA, 1.1, 0.6, 0, 0, 0.8);
  ModelSpec sb = chern(Variant::ChernYObcB, 1.1, 0.6, 0, 0, 0.8);
  for (int i = 0; i < 16; ++i) {
    double k = 2 * kPi * i / 16.0;
    double kt = 2 * kPi * ((i * 5) % 16) / 16.0;
    Eigen::Matrix2cd h = nhtb::bloch_matrix(nhtb::d_ssh(s1, k));
    CHECK((h - h.adjoint()).norm() < 1e-14);
    h = nhtb::bloch_matrix(nhtb::d_chern_x(sx, k, kt));
    CHECK((h - h.adjoint()).norm() < 1e-14);
    h = nhtb::bloch_matrix(nhtb::d_chern_y(sa, kt, k));
    CHECK((h - h.adjoint()).norm() < 1e-14);
    h = nhtb::bloch_matrix(nhtb::d_chern_y(sb, kt, k));
    CHECK((h - h.adjoint()).norm() < 1e-14);
  }
}

TEST_CASE("trig form reproduces the dispersion") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> uk(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    ModelSpec s;
    switch (trial % 4) {
      case 0: s = ssh(u(rng), u(rng), u(rng), u(rng), u(rng)); break;
      case 1: s = chern(Variant::ChernXObc, u(rng), u(rng), u(rng), u(rng), u(rng)); break;
      case 2: s = chern(Variant::ChernYObcA, u(rng), u(rng), 0, u(rng), u(rng)); break;
      default: s = chern(Variant::ChernYObcB, u(rng), u(rng), 0, u(rng), u(rng)); break;
    }
    double kt = uk(rng);
    nhtb::TrigForm f = nhtb::trig_form(s, kt);
    // complex k exercises the beta-substitution path as well
    cplx k = cplx(uk(rng), u(rng) / 4);
    DVector d = nhtb::d_vector(s, k, kt);
    cplx ck = std::cos(k);
    cplx sk = std::sin(k);
    DVector rebuilt{f.p[0] + f.q[0] * ck + f.s[0] * sk, f.p[1] + f.q[1] * ck + f.s[1] * sk,
                    f.p[2] + f.q[2] * ck + f.s[2] * sk};
    CHECK(dvec_dist(d, rebuilt) < 1e-12);
  }
}
