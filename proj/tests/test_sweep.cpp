#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nhtb/csvio.hpp"
#include "nhtb/invariants.hpp"
#include "nhtb/sweep.hpp"

using nhtb::ModelSpec;
using nhtb::Variant;

namespace {

constexpr double kPi = 3.14159265358979323846;

ModelSpec ssh_gamma3() {
  ModelSpec s;
  s.variant = Variant::Ssh1d;
  s.gamma = 3;
  return s;
}

ModelSpec fig_stack() {
  ModelSpec s;
  s.variant = Variant::ChernXObc;
  s.gamma = 3;
  s.delta_onsite = 1;
  s.delta_stagger = 1;
  return s;
}

}  // namespace

TEST_CASE("linspace") {
  const auto v = nhtb::linspace(0.0, 1.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 1.0);
  for (int i = 0; i < 5; ++i) CHECK(v[i] == doctest::Approx(0.25 * i).epsilon(1e-15));
  CHECK_THROWS_AS(nhtb::linspace(0.0, 1.0, 1), nhtb::ValidationError);
}

TEST_CASE("detect_jumps reports straddling midpoints") {
  const std::vector<double> axis = {0, 1, 2, 3, 4};
  const auto jumps = nhtb::detect_jumps(axis, {0, 0, 1, 1, 0});
  REQUIRE(jumps.size() == 2);
  CHECK(jumps[0] == doctest::Approx(1.5));
  CHECK(jumps[1] == doctest::Approx(3.5));
  CHECK(nhtb::detect_jumps(axis, {0, 0.4, 0.8, 1.2, 1.6}).empty());
  CHECK(nhtb::detect_jumps(axis, {0, 0.4, 0.8, 1.2, 1.6}, 0.3).size() == 4);
}

TEST_CASE("parallel_for_indexed covers every index once") {
  std::vector<int> hits(257, 0);
  nhtb::parallel_for_indexed(257, 4, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel_for_indexed propagates the worker exception") {
  std::atomic<int> done{0};
  CHECK_THROWS_AS(nhtb::parallel_for_indexed(64, 4,
                                             [&](int i) {
                                               if (i == 37) throw nhtb::ValidationError("boom");
                                               done += 1;
                                             }),
                  nhtb::ValidationError);
  CHECK(done <= 63);
}

TEST_CASE("sweep parameter names round-trip") {
  for (const auto p :
       {nhtb::SweepParameter::T1, nhtb::SweepParameter::Gamma, nhtb::SweepParameter::TransverseK})
    CHECK(nhtb::sweep_parameter_from_name(nhtb::sweep_parameter_name(p)) == p);
  CHECK_THROWS_AS(nhtb::sweep_parameter_from_name("t9"), nhtb::ValidationError);
}

TEST_CASE("sweep input validation") {
  nhtb::SweepAxis axis;
  axis.parameter = nhtb::SweepParameter::T1;
  axis.start = 0.5;
  axis.stop = 2.0;
  axis.n_points = 1;
  nhtb::SweepOptions opt;
  CHECK_THROWS_AS(nhtb::sweep(ssh_gamma3(), axis, opt), nhtb::ValidationError);
  axis.n_points = 3;
  axis.stop = axis.start;
  CHECK_THROWS_AS(nhtb::sweep(ssh_gamma3(), axis, opt), nhtb::ValidationError);
  axis.stop = 2.0;
  axis.parameter = nhtb::SweepParameter::TransverseK;
  CHECK_THROWS_AS(nhtb::sweep(ssh_gamma3(), axis, opt), nhtb::ValidationError);
}

TEST_CASE("small t1 sweep lands on the reference plateaus") {
  nhtb::SweepAxis axis;
  axis.parameter = nhtb::SweepParameter::T1;
  axis.start = 0.8;
  axis.stop = 2.0;
  axis.n_points = 3;
  nhtb::SweepOptions opt;
  opt.n_obc = 30;
  opt.n_p = 400;
  opt.gbz_resolution = 128;
  opt.n_momentum = 128;
  opt.n_workers = 1;

  const nhtb::SweepResult res = nhtb::sweep(ssh_gamma3(), axis, opt);
  REQUIRE(res.points.size() == 3);
  const std::vector<double> want_p = {0, 1, 0};
  for (size_t i = 0; i < 3; ++i) {
    const auto& pt = res.points[i];
    CHECK(!pt.failed);
    CHECK(pt.error.empty());
    CHECK(!pt.ep_flag);
    CHECK(pt.pbc_abs_energies.size() == 128);
    CHECK(pt.obc_abs_energies.size() == 60);
    CHECK(pt.edge_abs_energies.size() == pt.edge_boundary_weights.size());
    CHECK(std::abs(pt.P - want_p[i]) < 1e-2);
    CHECK(std::abs(pt.nu_tot - want_p[i]) < 1e-2);
    CHECK(std::isfinite(pt.nu_tot_right_only));
  }
  const auto jumps =
      nhtb::detect_jumps(nhtb::linspace(axis.start, axis.stop, 3),
                         {res.points[0].P, res.points[1].P, res.points[2].P});
  REQUIRE(jumps.size() == 2);
  CHECK(jumps[0] == doctest::Approx(1.1));
  CHECK(jumps[1] == doctest::Approx(1.7));
}

TEST_CASE("transverse sweep jumps sit on the gap closings, not the EPs") {
  ModelSpec s = fig_stack();
  nhtb::SweepAxis axis;
  axis.parameter = nhtb::SweepParameter::TransverseK;
  axis.start = 0.8;
  axis.stop = 1.4;
  axis.n_points = 13;
  nhtb::SweepOptions opt;
  opt.n_obc = 24;
  opt.n_p = 400;
  opt.gbz_resolution = 128;
  opt.n_momentum = 64;
  opt.n_workers = 1;

  const nhtb::SweepResult res = nhtb::sweep(s, axis, opt);
  const std::vector<double> grid = nhtb::linspace(axis.start, axis.stop, 13);
  std::vector<double> p_values;
  for (const auto& pt : res.points) {
    CHECK(!pt.failed);
    p_values.push_back(pt.P);
  }

  std::vector<double> closings_in_range;
  for (double ky : nhtb::obc_gap_closings(s))
    if (ky > axis.start && ky < axis.stop) closings_in_range.push_back(ky);
  REQUIRE(closings_in_range.size() == 2);

  const auto jumps = nhtb::detect_jumps(grid, p_values);
  REQUIRE(jumps.size() == 2);
  for (size_t i = 0; i < 2; ++i) CHECK(std::abs(jumps[i] - closings_in_range[i]) < 0.026);

  // quantized plateaus away from the closings, with both end regions at P = 0
  for (size_t i = 0; i < grid.size(); ++i) {
    double dist = 1e9;
    for (double ky : closings_in_range) dist = std::min(dist, std::abs(grid[i] - ky));
    if (dist < 0.06) continue;
    CHECK(std::abs(p_values[i] - std::round(p_values[i])) < 1e-2);
    CHECK(std::abs(res.points[i].nu_tot - std::round(res.points[i].nu_tot)) < 2e-2);
  }
  CHECK(std::abs(p_values.front()) < 1e-2);
  CHECK(std::abs(p_values.back()) < 1e-2);
  CHECK(std::abs(*std::max_element(p_values.begin(), p_values.end()) - 1.0) < 1e-2);

  // the PBC exceptional point in this window is not where P jumps
  const auto eps = nhtb::pbc_ep_locations(s);
  for (const auto& ep : eps)
    if (ep.second > axis.start && ep.second < axis.stop)
      for (double j : jumps) CHECK(std::abs(j - ep.second) > 0.05);
}

TEST_CASE("sweep csv output is byte deterministic") {
  nhtb::SweepAxis axis;
  axis.parameter = nhtb::SweepParameter::Gamma;
  axis.start = 2.2;
  axis.stop = 4.0;
  axis.n_points = 3;
  nhtb::SweepOptions opt;
  opt.n_obc = 16;
  opt.n_p = 120;
  opt.gbz_resolution = 128;
  opt.n_momentum = 32;
  opt.n_workers = 2;

  const nhtb::CsvTable a = nhtb::sweep_table(nhtb::sweep(ssh_gamma3(), axis, opt));
  const nhtb::CsvTable b = nhtb::sweep_table(nhtb::sweep(ssh_gamma3(), axis, opt));
  REQUIRE(a.header == b.header);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i] == b.rows[i]);
}

TEST_CASE("format_double renders shortest round-trip decimals") {
  CHECK(nhtb::format_double(1.0) == "1");
  CHECK(nhtb::format_double(0.1) == "0.1");
  CHECK(nhtb::format_double(1.0 / 3.0) == "0.3333333333333333");
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-12, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const double v = mant(rng) * std::pow(10.0, expo(rng));
    CHECK(std::stod(nhtb::format_double(v)) == v);
  }
}

TEST_CASE("brute force closing count on pinned couplings") {
  ModelSpec herm = fig_stack();
  herm.gamma = 0;
  herm.delta_stagger = 0.7;
  herm.delta_onsite = 0.4;
  ModelSpec gapped = fig_stack();
  gapped.t1 = 0.3;
  gapped.delta_stagger = 0.3;
  gapped.gamma = 4;
  CHECK(nhtb::brute_force_gap_closing_count(fig_stack()) == 6);
  CHECK(nhtb::brute_force_gap_closing_count(herm) == 2);
  CHECK(nhtb::brute_force_gap_closing_count(gapped) == 0);
}

TEST_CASE("phase diagram grids carry the expected labels") {
  const std::vector<double> gammas = {0.0, 2.0, 3.7};
  const std::vector<double> t1s = {0.3, 1.0, 2.0};

  const nhtb::PhaseDiagramGrid pbc = nhtb::phase_diagram_pbc(1.0, 1.0, gammas, t1s, 1);
  const int want_pbc[3][3] = {{0, 0, 0}, {1, 1, 1}, {1, 1, 1}};
  for (int ig = 0; ig < 3; ++ig)
    for (int it = 0; it < 3; ++it) CHECK(pbc.label_at(ig, it) == want_pbc[ig][it]);

  const nhtb::PhaseDiagramGrid obc = nhtb::phase_diagram_obc(1.0, 1.0, gammas, t1s, 1);
  // the tangency branch still fires at gamma = 3.7, t1 = 1 (tp^2 exceeds
  // gamma^2/4 by 0.02), so that cell carries 6 closings
  const int want_obc[3][3] = {{2, 2, 2}, {6, 2, 2}, {0, 6, 2}};
  for (int ig = 0; ig < 3; ++ig)
    for (int it = 0; it < 3; ++it) CHECK(obc.label_at(ig, it) == want_obc[ig][it]);

  CHECK_THROWS_AS(nhtb::phase_diagram_pbc(1.0, 1.0, {}, t1s, 1), nhtb::ValidationError);
}
