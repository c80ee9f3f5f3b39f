#include "chj/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chj {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_error_series_csv(const std::string& path, const std::vector<ErrorSeries>& series) {
  std::ofstream out = open_or_throw(path);
  out << "time,value,label\n";
  for (const ErrorSeries& s : series) {
    s.validate();
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      out << format_double(s.times[i]) << ',' << format_double(s.values[i]) << ',' << s.label
          << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string cost_csv_text(const std::vector<CostReport>& reports) {
  std::string s = "order,G,steps,entries_full,entries_tn,bytes_full,bytes_tn\n";
  for (const CostReport& r : reports) {
    s += std::to_string(r.order) + "," + std::to_string(r.gridpoints) + "," +
         std::to_string(r.steps) + "," + format_double(r.entries_full) + "," +
         format_double(r.entries_tn) + "," + format_double(r.bytes_full) + "," +
         format_double(r.bytes_tn) + "\n";
  }
  return s;
}

void write_cost_csv(const std::string& path, const std::vector<CostReport>& reports) {
  std::ofstream out = open_or_throw(path);
  out << cost_csv_text(reports);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_table_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_or_throw(path);
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace chj
