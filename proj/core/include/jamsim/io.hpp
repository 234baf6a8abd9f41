#pragma once

#include <string>
#include <vector>

#include "jamsim/rsa.hpp"

namespace jamsim {

// %.9g rendering used for every floating-point cell so outputs are byte-stable
// across runs of the same configuration.
std::string format_float(double value);

// CSV with one vector per column; all columns must share a length.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

// step,Z
std::string trajectory_csv(const Trajectory& trajectory);

// step,Z,U,L,area_S,r_tilde,alpha. Count columns hold N once their process has
// absorbed; per-step auxiliary columns print nan once theirs has stopped (and
// throughout when the corresponding process was not run).
std::string coupled_trace_csv(const CoupledRun& run);

struct Figure2Row {
  double c = 0.0;
  double t_lower = 0.0;
  double t_upper = 0.0;
  double t_er = 0.0;
  double rsa_mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};
std::string figure2_csv(const std::vector<Figure2Row>& rows);

// Writes via a sibling temporary file followed by an atomic rename, so readers
// never observe a partially written file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace jamsim
