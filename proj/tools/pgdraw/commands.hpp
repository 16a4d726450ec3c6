#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polyagamma/truncation_table.hpp"

namespace pgdraw {

enum exit_code : int { ok = 0, validation_failed = 1, usage_error = 2, numerical_failure = 3 };

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string ttable;
};

struct SampleArgs {
  double b = 1;
  double z = 0;
  std::int64_t n = 1;
  std::string method = "auto";
  std::string format = "lines";
};

struct BenchArgs {
  std::vector<double> b{1, 2, 3, 4, 10, 12, 14, 16, 18, 20, 30, 40, 50, 100};
  std::vector<double> z{0, 0.1, 0.5, 1, 2, 10};
  std::vector<std::string> methods{"devroye", "alternate", "saddlepoint", "gamma-sum"};
  std::int64_t n = 10000;
  int reps = 3;
  std::string pivot;
};

struct ValidateArgs {
  std::vector<std::string> suites;
  std::int64_t n = 100000;
  std::vector<std::string> corrupt;
};

struct TableArgs {
  double h_min = 1;
  double h_max = 4;
  double step = polyagamma::default_trunc_step;
};

int run_sample(const Common& common, const SampleArgs& args, std::ostream& out);
int run_bench(const Common& common, const BenchArgs& args, std::ostream& out);
int run_validate(const Common& common, const ValidateArgs& args, std::ostream& out);
int run_table(const Common& common, const TableArgs& args, std::ostream& out);

/// Table from --ttable, if given.
std::optional<polyagamma::TruncationTable> load_table(const Common& common);

/// Shortest decimal that reads back to the same double.
std::string fmt(double v);

}  // namespace pgdraw
