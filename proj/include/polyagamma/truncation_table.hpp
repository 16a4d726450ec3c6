#pragma once

// Precomputed paste points t(h) on a grid over [1, 4], linearly interpolated.
// The CSV form (`h,t`) uses shortest round-trip decimals, so a reloaded table
// answers every lookup bit-identically.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "polyagamma/error.hpp"
#include "polyagamma/jstar_density.hpp"

namespace polyagamma {

/// Grid step of the default table. t(h) bends sharply just above h = 1, and
/// this step keeps the interpolation error below 1e-4 there (about 3e-5).
inline constexpr double default_trunc_step = 0.0025;

class TruncationTable {
 public:
  static TruncationTable build(double h_min = 1.0, double h_max = 4.0,
                               double step = default_trunc_step) {
    detail::require(h_min >= min_alternate_shape && h_max <= max_alternate_shape && h_min < h_max,
                    "truncation table: need 1 <= h_min < h_max <= 4");
    detail::require(step > 0, "truncation table: step must be positive");
    const double span = (h_max - h_min) / step;
    const auto intervals = static_cast<std::size_t>(std::llround(span));
    detail::require(intervals >= 1 && std::fabs(span - static_cast<double>(intervals)) < 1e-9,
                    "truncation table: step must divide the range");
    TruncationTable table;
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double h = i == intervals ? h_max : h_min + static_cast<double>(i) * step;
      table.h_.push_back(h);
      table.t_.push_back(solve_trunc_point(h));
    }
    return table;
  }

  static TruncationTable from_points(std::vector<double> h, std::vector<double> t) {
    detail::require(h.size() == t.size() && h.size() >= 2,
                    "truncation table: need at least two matching points");
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      detail::require(h[i] < h[i + 1], "truncation table: h must be strictly increasing");
    }
    TruncationTable table;
    table.h_ = std::move(h);
    table.t_ = std::move(t);
    return table;
  }

  /// Linear interpolation; exact at grid points. Throws std::out_of_range
  /// outside the tabulated range.
  double lookup(double h) const {
    if (!(h >= h_.front() && h <= h_.back())) {
      throw std::out_of_range("truncation table: h outside tabulated range");
    }
    const auto upper = std::upper_bound(h_.begin(), h_.end(), h);
    if (upper == h_.end()) return t_.back();
    const std::size_t i = static_cast<std::size_t>(upper - h_.begin()) - 1;
    const double w = (h - h_[i]) / (h_[i + 1] - h_[i]);
    return t_[i] + w * (t_[i + 1] - t_[i]);
  }

  double h_min() const { return h_.front(); }
  double h_max() const { return h_.back(); }
  std::size_t size() const { return h_.size(); }
  const std::vector<double>& h_values() const { return h_; }
  const std::vector<double>& t_values() const { return t_; }

  void write_csv(std::ostream& out) const {
    out << "h,t\n";
    for (std::size_t i = 0; i < h_.size(); ++i) {
      out << format(h_[i]) << ',' << format(t_[i]) << '\n';
    }
  }

  static TruncationTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "h,t") {
      throw std::runtime_error("truncation table: missing `h,t` header");
    }
    std::vector<double> h;
    std::vector<double> t;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw std::runtime_error("truncation table: malformed row `" + line + "`");
      }
      h.push_back(parse(line.substr(0, comma)));
      t.push_back(parse(line.substr(comma + 1)));
    }
    return from_points(std::move(h), std::move(t));
  }

  static TruncationTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("truncation table: cannot open " + path);
    return read_csv(in);
  }

 private:
  static std::string format(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  static double parse(const std::string& s) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw std::runtime_error("truncation table: bad number `" + s + "`");
    }
    return v;
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::vector<double> h_;
  std::vector<double> t_;
};

inline const TruncationTable& default_trunc_table() {
  static const TruncationTable table = TruncationTable::build();
  return table;
}

inline TruncationTable build_trunc_table(double h_min = 1.0, double h_max = 4.0,
                                         double step = default_trunc_step) {
  return TruncationTable::build(h_min, h_max, step);
}

inline double trunc_lookup(double h) { return default_trunc_table().lookup(h); }

}  // namespace polyagamma
