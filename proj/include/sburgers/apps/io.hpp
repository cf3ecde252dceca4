#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sburgers/core/field.hpp"

namespace sburgers {

/// Named scalars and per-check verdicts of one run.
struct Summary {
  std::string application;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, bool>> checks;

  bool all_passed() const;
};

/// 17 significant digits, shortest exponent form; identical input gives identical text.
std::string format_real(double value);

/// Header `t,x,value`, then one row per node ordered by time, then space.
void export_field_csv(const Field& field, const std::string& path);

/// One column per named series; all series must share a length.
void export_series_csv(const std::vector<std::pair<std::string, Eigen::VectorXd>>& columns, const std::string& path);

/// Flat JSON object: application, all_passed, `<check>.passed` flags and the scalars.
void export_summary_json(const Summary& summary, const std::string& path);

/// gnuplot script plotting each field CSV as a surface and each series CSV against its first column.
std::string gnuplot_script(const std::vector<std::string>& field_csvs, const std::vector<std::string>& series_csvs);

}  // namespace sburgers
