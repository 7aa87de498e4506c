#pragma once

// Reports: a JSON document with every high-precision number as a decimal
// string, plus a rounded CSV table.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rmlab/io/config.hpp"

namespace rmlab::io {

enum ExitCode { ok = 0, residual_violation = 2, convergence_failure = 3, invalid_input = 4 };

inline std::string dec(const hp::Real& x) { return x.to_string(); }
inline json dec(const hp::Complex& z) { return json{{"re", dec(z.re)}, {"im", dec(z.im)}}; }
inline std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}
inline std::string rounded(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Report {
  std::string command;  // e.g. "stark compute"
  json doc = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = ok;

  explicit Report(std::string cmd) : command(std::move(cmd)) {}
  void fail_if(bool bad) {
    if (bad && exit_code == ok) exit_code = residual_violation;
  }
};

inline json envelope(const Report& r, const RunConfig& c) {
  json j;
  j["command"] = r.command;
  j["config"] = emit_config(c);
  j["precision_bits"] = c.precision_bits;
  j["result"] = r.doc;
  j["status"] = r.exit_code == ok ? "ok" : "residual_violation";
  return j;
}

inline std::string json_text(const Report& r, const RunConfig& c) { return envelope(r, c).dump(2) + "\n"; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string csv_text(const Report& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.csv_header.size(); ++i) os << (i ? "," : "") << csv_field(r.csv_header[i]);
  os << "\n";
  for (const auto& row : r.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  return os.str();
}

inline std::string file_stem(const std::string& command) {
  std::string s = command;
  for (char& ch : s)
    if (ch == ' ' || ch == '-') ch = '_';
  return s;
}

/// Writes <out>/<stem>.json and/or .csv; with an empty `out` prints to stdout.
inline void write_report(const Report& r, const RunConfig& c, const std::string& out, const std::string& format,
                         std::ostream& stdout_stream) {
  const bool want_json = format == "json" || format == "both";
  const bool want_csv = format == "csv" || format == "both";
  if (!want_json && !want_csv) throw InvalidInput("format must be json, csv or both");
  if (out.empty()) {
    if (want_json) stdout_stream << json_text(r, c);
    if (want_csv) stdout_stream << csv_text(r);
    return;
  }
  std::filesystem::create_directories(out);
  const std::filesystem::path base = std::filesystem::path(out) / file_stem(r.command);
  if (want_json) std::ofstream(base.string() + ".json") << json_text(r, c);
  if (want_csv) std::ofstream(base.string() + ".csv") << csv_text(r);
}

}  // namespace rmlab::io
