#pragma once

#include <string>
#include <vector>

#include "nhtb/gbz.hpp"
#include "nhtb/realspace.hpp"
#include "nhtb/sweep.hpp"

namespace nhtb {

/// Shortest round-trip decimal rendering; CSV output is byte-deterministic.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const CsvTable& table, const std::string& path);

CsvTable spectrum_table(const ObcHamiltonian& obc, const BiorthogonalSpectrum& spec,
                        const ModeClassification& cls);
CsvTable gbz_table(const GbzContour& contour);
CsvTable sweep_table(const SweepResult& result);  // long format: param, quantity, value
CsvTable phase_grid_table(const PhaseDiagramGrid& grid);

}  // namespace nhtb
