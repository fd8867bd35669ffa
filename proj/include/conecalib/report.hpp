#pragma once

#include "conecalib/catalog.hpp"
#include "conecalib/certify.hpp"

#include <string>
#include <vector>

namespace conecalib {

inline constexpr const char* CONECALIB_VERSION = "1.0.0";

// All emitters are deterministic: C locale, 17 significant digits, LF line
// endings, and files land via write-to-temp + rename.

std::string format_g17(double x);  // shortest round-trip-safe decimal ("inf" supported)

struct CertReport {
  MetricParams params;
  std::string group, link_label;
  ComassVerdict verdict;
  double wall_time_ms = 0;
  bool stable = false;  // suppress wall time (byte-identical reruns)
  std::string to_json() const;
};

struct CsvColumn {
  std::string header;
  std::vector<double> values;
};
std::string csv_table(const std::vector<CsvColumn>& columns);

// Minimal polyline chart: axes, tick labels, optional y = 1 reference line.
std::string svg_line_chart(const std::vector<double>& x,
                           const std::vector<std::vector<double>>& ys,
                           const std::vector<std::string>& labels,
                           const std::string& title, bool y1_reference);

void atomic_write(const std::string& path, const std::string& content);

}  // namespace conecalib
