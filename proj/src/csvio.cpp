#include "nhtb/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace nhtb {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

namespace {

std::string label_name(ModeLabel label) {
  switch (label) {
    case ModeLabel::Bulk: return "bulk";
    case ModeLabel::EdgeLeft: return "edge_left";
    case ModeLabel::EdgeRight: return "edge_right";
  }
  return "bulk";
}

}  // namespace

CsvTable spectrum_table(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                        const ModeClassification& cls) {
  (void)obc;
  CsvTable t;
  t.header = {"re_E", "im_E", "abs_E", "kind", "boundary_weight"};
  for (size_t j = 0; j < spec.eigenvalues.size(); ++j) {
    const cplx e = spec.eigenvalues[j];
    t.rows.push_back({format_double(e.real()), format_double(e.imag()),
                      format_double(std::abs(e)), label_name(cls.labels[j]),
                      format_double(cls.boundary_weight[j])});
  }
  return t;
}

CsvTable gbz_table(const GbzContour& contour) {
  CsvTable t;
  t.header = {"phi", "re_beta", "im_beta", "abs_beta"};
  for (const auto& pt : contour.points)
    t.rows.push_back({format_double(pt.phi), format_double(pt.beta.real()),
                      format_double(pt.beta.imag()), format_double(std::abs(pt.beta))});
  return t;
}

CsvTable sweep_table(const SweepResult& result) {
  CsvTable t;
  t.header = {"param", "quantity", "value"};
  for (const auto& pt : result.points) {
    const std::string p = format_double(pt.param);
    const auto emit = [&](const std::string& quantity, double value) {
      t.rows.push_back({p, quantity, format_double(value)});
    };
    for (const double v : pt.pbc_abs_energies) emit("pbc_abs_E", v);
    for (const double v : pt.obc_abs_energies) emit("obc_abs_E", v);
    for (size_t j = 0; j < pt.edge_abs_energies.size(); ++j) {
      emit("edge_abs_E", pt.edge_abs_energies[j]);
      emit("edge_boundary_weight", pt.edge_boundary_weights[j]);
    }
    emit("P", pt.P);
    emit("nu_tot", pt.nu_tot);
    emit("nu_tot_right_only", pt.nu_tot_right_only);
    emit("ep_flag", pt.ep_flag ? 1.0 : 0.0);
    emit("failed", pt.failed ? 1.0 : 0.0);
  }
  return t;
}

CsvTable phase_grid_table(const PhaseDiagramGrid& grid) {
  CsvTable t;
  t.header = {"gamma", "t1", "label"};
  for (size_t ig = 0; ig < grid.gamma_grid.size(); ++ig)
    for (size_t it = 0; it < grid.t1_grid.size(); ++it)
      t.rows.push_back({format_double(grid.gamma_grid[ig]), format_double(grid.t1_grid[it]),
                        std::to_string(grid.label_at(static_cast<int>(ig), static_cast<int>(it)))});
  return t;
}

}  // namespace nhtb
