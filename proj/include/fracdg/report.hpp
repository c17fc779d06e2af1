/// Convergence reports: error/rate rows, CSV serialization, and comparison
/// against shipped reference tables.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdg {

struct ReportRow {
  int key = 0;  // N (time studies) or M (space studies)
  double error = 0.0;
  std::optional<double> rate;
  std::optional<double> ref_error;
  std::optional<double> ref_rate;
  std::string verdict;  // empty until compared: PASS / FAIL / SKIP / MISSING
};

struct ConvergenceReport {
  std::string label;
  std::vector<ReportRow> rows;

  bool compared() const {
    for (const auto& r : rows)
      if (!r.verdict.empty()) return true;
    return false;
  }
  bool all_pass() const {
    for (const auto& r : rows)
      if (r.verdict == "FAIL" || r.verdict == "MISSING") return false;
    return true;
  }
};

/// rate_i = log2(error_{i-1} / error_i); the first row carries none.
inline void append_rates(ConvergenceReport& report) {
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i == 0)
      report.rows[i].rate.reset();
    else
      report.rows[i].rate = std::log2(report.rows[i - 1].error / report.rows[i].error);
  }
}

namespace detail {

inline std::string sci5(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

inline std::optional<double> parse_cell(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return std::nullopt;
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::stod(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace detail

inline void write_report_csv(const ConvergenceReport& report, std::ostream& os) {
  os << "key,error,rate,ref_error,ref_rate,verdict\n";
  for (const auto& r : report.rows) {
    os << r.key << ',' << detail::sci5(r.error) << ',';
    if (r.rate) os << detail::sci5(*r.rate);
    os << ',';
    if (r.ref_error) os << detail::sci5(*r.ref_error);
    os << ',';
    if (r.ref_rate) os << detail::sci5(*r.ref_rate);
    os << ',' << r.verdict << '\n';
  }
}

inline void write_report_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  write_report_csv(report, os);
}

struct ReferenceRow {
  int key = 0;
  std::optional<double> error;
  std::optional<double> rate;
};

/// Reference tables are plain CSV: key,error,rate with a header line; blank
/// cells mark values absent from the source table.
inline std::vector<ReferenceRow> read_reference_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open reference table '" + path + "'");
  std::vector<ReferenceRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = detail::split_csv_line(line);
    if (cells.empty() || cells[0].find_first_of("0123456789") == std::string::npos)
      continue;  // header
    ReferenceRow r;
    r.key = std::stoi(cells[0]);
    if (cells.size() > 1) r.error = detail::parse_cell(cells[1]);
    if (cells.size() > 2) r.rate = detail::parse_cell(cells[2]);
    rows.push_back(r);
  }
  return rows;
}

/// Attach reference values and per-row verdicts:
/// PASS when |error - ref|/ref <= error_rel and, where both rates exist,
/// |rate - ref_rate| <= rate_abs; SKIP for reference rows with a blank error
/// cell; MISSING when the reference lacks the row key entirely.
inline void compare_reference(ConvergenceReport& report, const std::vector<ReferenceRow>& ref,
                              double error_rel, double rate_abs) {
  for (auto& row : report.rows) {
    const ReferenceRow* match = nullptr;
    for (const auto& r : ref)
      if (r.key == row.key) {
        match = &r;
        break;
      }
    if (!match) {
      row.verdict = "MISSING";
      continue;
    }
    if (!match->error) {
      row.verdict = "SKIP";
      continue;
    }
    row.ref_error = match->error;
    row.ref_rate = match->rate;
    bool ok = std::abs(row.error - *match->error) <= error_rel * *match->error;
    if (match->rate && row.rate) ok = ok && std::abs(*row.rate - *match->rate) <= rate_abs;
    row.verdict = ok ? "PASS" : "FAIL";
  }
}

}  // namespace fracdg
