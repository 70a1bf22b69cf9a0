// File outputs: observable time series as CSV (17 significant digits), final
// states as a flat little-endian binary layout, and JSON reports.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <g5/evolve.hpp>

#include <json.hpp>

namespace g5 {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesRow {
  double t = 0.0;
  Observables obs;
};

/// Columns: t,norm,mean_x0,mean_x1,mean_x2,mean_p0,mean_p1,mean_p2,
/// var_x,var_p,energy. One header line, 17 significant digits.
void write_series_csv(const std::filesystem::path& path,
                      const std::vector<SeriesRow>& rows);

/// Binary layout: magic "G5STATE1", u32 dims, u32 ncomp, u32 points[dims],
/// f64 lengths[dims], f64 t, f64 m, f64 hbar, then ncomp blocks of
/// interleaved re/im f64 pairs in row-major order (axis 0 slowest).
void write_state_bin(const std::filesystem::path& path, const ScalarWavefunction& s);
void write_state_bin(const std::filesystem::path& path, const PauliSpinor& s);
ScalarWavefunction read_state_bin(const std::filesystem::path& path);

void write_report_json(const std::filesystem::path& path,
                       const nlohmann::ordered_json& report);

}  // namespace g5
