#include "volest/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

#include "volest/errors.hpp"

namespace volest {

std::string format_fixed17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_path_csv(std::ostream& os, const PathPair& path) {
  os << "t,x,y,dw\n";
  const Index n = path.grid.steps();
  for (Index k = 0; k <= n; ++k) {
    os << format_fixed17(path.grid.time(k)) << ',' << format_fixed17(path.x[k]) << ','
       << format_fixed17(path.y[k]) << ',';
    if (k < n && path.has_increments()) os << format_fixed17(path.dw[k]);
    os << '\n';
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double cell(std::string_view s, std::size_t line_no) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("path csv line " + std::to_string(line_no) + ": invalid number '" +
                      std::string(s) + "'");
  }
  return v;
}

}  // namespace

PathPair read_path_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<double> t, x, y, dw;
  std::vector<bool> has_dw;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "t,x,y,dw" && line != "t,x,y") {
        throw ConfigError("path csv: expected header 't,x,y,dw', got '" + line + "'");
      }
      header = true;
      continue;
    }
    const auto cols = split(line);
    if (cols.size() < 3 || cols.size() > 4) {
      throw ConfigError("path csv line " + std::to_string(line_no) + ": expected 3 or 4 columns");
    }
    t.push_back(cell(cols[0], line_no));
    x.push_back(cell(cols[1], line_no));
    y.push_back(cell(cols[2], line_no));
    const bool present = cols.size() == 4 && !cols[3].empty();
    dw.push_back(present ? cell(cols[3], line_no) : 0.0);
    has_dw.push_back(present);
  }
  if (!header) throw ConfigError("path csv: missing header");
  if (t.size() < 2) throw ConfigError("path csv: need at least two nodes");
  if (t[0] != 0.0) throw ConfigError("path csv: first node must be t=0");
  const Index n = static_cast<Index>(t.size()) - 1;
  const double h = t[1] - t[0];
  for (Index k = 0; k <= n; ++k) {
    const double expected = static_cast<double>(k) * h;
    if (std::abs(t[static_cast<std::size_t>(k)] - expected) > 1e-9 * std::max(1.0, expected)) {
      throw ConfigError("path csv: node " + std::to_string(k) + " is off the uniform grid");
    }
  }
  // Increments are kept only when every node but the last carries one.
  const bool synthetic = std::all_of(has_dw.begin(), has_dw.end() - 1, [](bool b) { return b; });

  PathPair path{TimeGrid(static_cast<double>(n) * h, h), Vector<double>(n + 1),
                Vector<double>(n + 1), Vector<double>(), 0};
  for (Index k = 0; k <= n; ++k) {
    path.x[k] = x[static_cast<std::size_t>(k)];
    path.y[k] = y[static_cast<std::size_t>(k)];
  }
  if (synthetic) path.dw = Eigen::Map<const Vector<double>>(dw.data(), n);
  return path;
}

std::string estimate_csv_row(const EstimateResult& r) {
  return format_fixed17(r.T) + ',' + format_fixed17(r.theta_hat) + ',' +
         format_fixed17(r.numerator) + ',' + format_fixed17(r.denominator) + ',' +
         std::to_string(r.n_used);
}

}  // namespace volest
