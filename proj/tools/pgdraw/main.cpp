// pgdraw: draw, benchmark and validate Polya-Gamma variates.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "polyagamma/error.hpp"

namespace pgdraw {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<polyagamma::TruncationTable> load_table(const Common& common) {
  if (common.ttable.empty()) return std::nullopt;
  return polyagamma::TruncationTable::load(common.ttable);
}

}  // namespace pgdraw

namespace {

template <class Run>
int with_output(const std::string& path, Run run) {
  if (path.empty() || path == "-") {
    const int code = run(std::cout);
    std::cout.flush();
    return code;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open output file " + path);
  const int code = run(file);
  file.flush();
  if (!file) throw std::invalid_argument("write failed for " + path);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pgdraw;
  CLI::App app{"Polya-Gamma random variates: sample, bench, validate, table"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", common.out, "Output path (default stdout)");
  app.add_option("--ttable", common.ttable, "Precomputed truncation table (CSV h,t)");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw PG(b,z) variates");
  sample_cmd->add_option("--b", sample.b, "Shape b > 0")->required();
  sample_cmd->add_option("--z", sample.z, "Tilt z")->capture_default_str();
  sample_cmd->add_option("--n", sample.n, "Number of draws")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--method", sample.method,
                         "auto|devroye|alternate|saddlepoint|normal|gamma-sum")
      ->capture_default_str();
  sample_cmd->add_option("--format", sample.format, "lines|csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"lines", "csv"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time each method over a (b,z) grid");
  bench_cmd->add_option("--b", bench.b, "Shape grid")->delimiter(',');
  bench_cmd->add_option("--z", bench.z, "Tilt grid")->delimiter(',');
  bench_cmd->add_option("--methods", bench.methods, "Methods to time")->delimiter(',');
  bench_cmd->add_option("--n", bench.n, "Draws per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench.reps, "Timing repetitions (median reported)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--pivot", bench.pivot, "Write the best-method table here");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Run statistical validation suites");
  validate_cmd
      ->add_option("--suites", validate.suites,
                   "moments,oracle,cross,domination,envelope,conjecture (default all)")
      ->delimiter(',');
  validate_cmd->add_option("--n", validate.n, "Draws per test")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  validate_cmd->add_option("--corrupt-threshold", validate.corrupt)->group("")->delimiter(',');

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "Build the truncation-point table");
  table_cmd->add_option("--h-min", table.h_min)->capture_default_str();
  table_cmd->add_option("--h-max", table.h_max)->capture_default_str();
  table_cmd->add_option("--step", table.step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage_error;
  }

  try {
    return with_output(common.out, [&](std::ostream& out) {
      if (*sample_cmd) return run_sample(common, sample, out);
      if (*bench_cmd) return run_bench(common, bench, out);
      if (*validate_cmd) return run_validate(common, validate, out);
      return run_table(common, table, out);
    });
  } catch (const polyagamma::numerical_error& e) {
    std::fprintf(stderr, "pgdraw: numerical failure: %s\n", e.what());
    return numerical_failure;
  } catch (const std::logic_error& e) {
    // domain_error, out_of_range and invalid_argument
    std::fprintf(stderr, "pgdraw: %s\n", e.what());
    return usage_error;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pgdraw: %s\n", e.what());
    return usage_error;
  }
}
