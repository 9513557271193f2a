#pragma once

#include <iosfwd>
#include <string>

#include "poolrisk/rates.hpp"

namespace poolrisk::cli {

// Fixed CSV schema for convergence reports:
//   n,value,gap,n_gap,sqrtn_gap,bound_lower,bound_upper,verdict
// Bounds and verdict are report-level and repeated per row. Floats carry
// 17 significant digits, so parsing the file back reproduces every double
// bit-exactly.
std::string format_double(double x);
void write_report_csv(std::ostream& os, const ConvergenceReport& r);
void write_report_csv(const std::string& path, const ConvergenceReport& r);
ConvergenceReport read_report_csv(const std::string& path);

}  // namespace poolrisk::cli
