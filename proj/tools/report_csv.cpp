#include "report_csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace poolrisk::cli {

namespace {

constexpr const char* kHeader = "n,value,gap,n_gap,sqrtn_gap,bound_lower,bound_upper,verdict";

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("bad numeric field '" + s + "'");
    return x;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_report_csv(std::ostream& os, const ConvergenceReport& r) {
    os << kHeader << '\n';
    for (const RateRow& row : r.rows) {
        os << row.n << ',' << format_double(row.value) << ',' << format_double(row.gap) << ','
           << format_double(row.n_gap) << ',' << format_double(row.sqrtn_gap) << ','
           << format_double(r.bound_lower) << ',' << format_double(r.bound_upper) << ','
           << to_string(r.verdict) << '\n';
    }
}

void write_report_csv(const std::string& path, const ConvergenceReport& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    write_report_csv(out, r);
}

ConvergenceReport read_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open report file '" + path + "'");

    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::invalid_argument("report '" + path + "' does not start with the CSV header");

    ConvergenceReport r;
    r.limit_estimate = std::numeric_limits<double>::quiet_NaN();
    r.target_limit = std::numeric_limits<double>::quiet_NaN();
    r.sqrtn_bound = std::numeric_limits<double>::quiet_NaN();
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 8)
            throw std::invalid_argument("report '" + path + "' has a malformed row: " + line);
        RateRow row{};
        row.n = static_cast<int>(std::strtol(fields[0].c_str(), nullptr, 10));
        row.value = parse_double(fields[1]);
        row.gap = parse_double(fields[2]);
        row.n_gap = parse_double(fields[3]);
        row.sqrtn_gap = parse_double(fields[4]);
        r.rows.push_back(row);
        if (first) {
            r.bound_lower = parse_double(fields[5]);
            r.bound_upper = parse_double(fields[6]);
            r.verdict = verdict_from_string(fields[7]);
            first = false;
        }
    }
    if (r.rows.empty()) throw std::invalid_argument("report '" + path + "' holds no rows");
    return r;
}

}  // namespace poolrisk::cli
