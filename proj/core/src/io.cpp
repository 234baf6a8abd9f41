#include "jamsim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace jamsim {

std::string format_float(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("csv_table: header and column counts differ");
  if (columns.empty()) throw std::invalid_argument("csv_table: need at least one column");
  const std::size_t rows = columns.front().size();
  for (const auto& col : columns)
    if (col.size() != rows) throw std::invalid_argument("csv_table: ragged columns");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_float(columns[c][i]);
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "step,Z\n";
  for (std::size_t i = 0; i < trajectory.z.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(trajectory.z[i]);
    out += '\n';
  }
  return out;
}

std::string coupled_trace_csv(const CoupledRun& run) {
  const std::int64_t n = run.z.trajectory.n_total;
  const auto z_steps = static_cast<std::size_t>(run.z.trajectory.hitting_time());
  std::size_t steps = z_steps;
  if (run.lower)
    steps = std::max(steps, static_cast<std::size_t>(run.lower->trajectory.hitting_time()));

  auto count_at = [n](const Trajectory& t, std::size_t step) {
    const auto hit = static_cast<std::size_t>(t.hitting_time());
    return step <= hit ? t.z[step] : n;
  };

  std::string out = "step,Z,U,L,area_S,r_tilde,alpha\n";
  for (std::size_t i = 1; i <= steps; ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(count_at(run.z.trajectory, i));
    out += ',';
    out += run.upper ? std::to_string(count_at(run.upper->trajectory, i)) : "nan";
    out += ',';
    out += run.lower ? std::to_string(count_at(run.lower->trajectory, i)) : "nan";
    out += ',';
    out += i <= run.z.step_areas.size() ? format_float(run.z.step_areas[i - 1]) : "nan";
    out += ',';
    out += i <= run.r_tilde.size() ? format_float(run.r_tilde[i - 1]) : "nan";
    out += ',';
    out += i <= run.alpha.size() ? format_float(run.alpha[i - 1]) : "nan";
    out += '\n';
  }
  return out;
}

std::string figure2_csv(const std::vector<Figure2Row>& rows) {
  std::vector<std::vector<double>> columns(7);
  for (const Figure2Row& row : rows) {
    columns[0].push_back(row.c);
    columns[1].push_back(row.t_lower);
    columns[2].push_back(row.t_upper);
    columns[3].push_back(row.t_er);
    columns[4].push_back(row.rsa_mean);
    columns[5].push_back(row.ci_low);
    columns[6].push_back(row.ci_high);
  }
  return csv_table({"c", "T_lower", "T_upper", "T_er", "rsa_mean", "ci_low", "ci_high"}, columns);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write_text_atomic: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace jamsim
