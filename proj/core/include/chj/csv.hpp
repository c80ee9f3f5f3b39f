#pragma once

#include <string>
#include <vector>

#include "chj/metrics.hpp"

namespace chj {

/// Shortest round-trip decimal rendering of a double (%.17g).
std::string format_double(double v);

/// Writes stacked series as rows (time, value, label) under a header line.
void write_error_series_csv(const std::string& path, const std::vector<ErrorSeries>& series);

/// Writes CostReports, one row each, with the pinned column schema.
void write_cost_csv(const std::string& path, const std::vector<CostReport>& reports);

/// Renders CostReports to a CSV string (header + rows).
std::string cost_csv_text(const std::vector<CostReport>& reports);

/// Writes arbitrary rows under a header; every cell is already a string.
void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace chj
