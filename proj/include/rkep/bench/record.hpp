#pragma once

// One row of benchmark output and its CSV form. Column order is the field order.

#include <array>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rkep/solvers/types.hpp"

namespace rkep {

struct BenchRecord {
  std::string instance;
  int n_pairs = 0;
  int n_ndds = 0;
  int n_arcs = 0;
  int K = 3;
  int L = 3;
  int B = 1;
  std::string policy = "fr";
  std::string encoding = "cc";
  std::string method = "cut";
  bool lifting = false;
  std::string status = "optimal";
  std::optional<int> objective;
  double time_total = 0.0;
  double time_stage2 = 0.0;
  double time_stage3 = 0.0;
  long n_attacks = 0;
  long n_subproblems = 0;
  long bb_nodes = 0;
  std::uint64_t seed = 0;

  bool solved() const { return status == "optimal"; }
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr std::array<const char*, 20> kRecordColumns{
    "instance", "n_pairs",   "n_ndds",       "n_arcs",       "K",         "L",
    "B",        "policy",    "encoding",     "method",       "lifting",   "status",
    "objective", "time_total_s", "time_stage2_s", "time_stage3_s", "n_attacks", "n_subproblems",
    "bb_nodes", "seed"};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') out.back() += line[++k];
      else if (c == '"') quoted = false;
      else out.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw Error("unterminated quote in CSV line");
  return out;
}

inline std::string format_seconds(double t) {
  std::ostringstream s;
  s << std::setprecision(17) << t;
  return s.str();
}

template <class T>
T parse_number(const std::string& s, const char* column) {
  std::istringstream in(s);
  T v{};
  if (!(in >> v) || !(in >> std::ws).eof()) throw Error(std::string("bad value '") + s + "' in column " + column);
  return v;
}

}  // namespace detail

inline std::string csv_header() {
  std::string h;
  for (std::size_t k = 0; k < kRecordColumns.size(); ++k) h += (k ? "," : "") + std::string(kRecordColumns[k]);
  return h;
}

inline std::string to_csv(const BenchRecord& r) {
  std::ostringstream o;
  o << detail::csv_field(r.instance) << ',' << r.n_pairs << ',' << r.n_ndds << ',' << r.n_arcs << ',' << r.K << ','
    << r.L << ',' << r.B << ',' << r.policy << ',' << r.encoding << ',' << r.method << ','
    << (r.lifting ? "on" : "off") << ',' << r.status << ',' << (r.objective ? std::to_string(*r.objective) : "")
    << ',' << detail::format_seconds(r.time_total) << ',' << detail::format_seconds(r.time_stage2) << ','
    << detail::format_seconds(r.time_stage3) << ',' << r.n_attacks << ',' << r.n_subproblems << ',' << r.bb_nodes
    << ',' << r.seed;
  return o.str();
}

inline BenchRecord parse_csv_record(const std::string& line) {
  using detail::parse_number;
  const auto f = detail::split_csv_line(line);
  if (f.size() != kRecordColumns.size())
    throw Error("expected " + std::to_string(kRecordColumns.size()) + " CSV fields, got " + std::to_string(f.size()));
  BenchRecord r;
  r.instance = f[0];
  r.n_pairs = parse_number<int>(f[1], "n_pairs");
  r.n_ndds = parse_number<int>(f[2], "n_ndds");
  r.n_arcs = parse_number<int>(f[3], "n_arcs");
  r.K = parse_number<int>(f[4], "K");
  r.L = parse_number<int>(f[5], "L");
  r.B = parse_number<int>(f[6], "B");
  r.policy = f[7];
  r.encoding = f[8];
  r.method = f[9];
  if (f[10] != "on" && f[10] != "off") throw Error("bad lifting value '" + f[10] + "'");
  r.lifting = f[10] == "on";
  r.status = f[11];
  if (r.status != "optimal" && r.status != "timelimit") throw Error("bad status '" + r.status + "'");
  if (!f[12].empty()) r.objective = parse_number<int>(f[12], "objective");
  if (r.solved() != r.objective.has_value()) throw Error("objective must be present exactly for optimal rows");
  r.time_total = parse_number<double>(f[13], "time_total_s");
  r.time_stage2 = parse_number<double>(f[14], "time_stage2_s");
  r.time_stage3 = parse_number<double>(f[15], "time_stage3_s");
  r.n_attacks = parse_number<long>(f[16], "n_attacks");
  r.n_subproblems = parse_number<long>(f[17], "n_subproblems");
  r.bb_nodes = parse_number<long>(f[18], "bb_nodes");
  r.seed = parse_number<std::uint64_t>(f[19], "seed");
  return r;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << csv_header() << '\n';
  for (const auto& r : records) out << to_csv(r) << '\n';
}

inline std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw Error("unexpected CSV header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line))
    if (!line.empty() && line != "\r") out.push_back(parse_csv_record(line));
  return out;
}

}  // namespace rkep
