#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "commands.hpp"
#include "polyagamma/polyagamma.hpp"

namespace pgdraw {

namespace {

using namespace polyagamma;

constexpr double ks_level = 0.001;

struct ValidationRecord {
  std::string suite;
  std::string test;
  double b;
  double z;
  double statistic;
  double threshold;
  bool pass = false;
};

class Harness {
 public:
  Harness(std::uint64_t seed, std::int64_t n, const AlternateOptions& options)
      : root_(seed), n_(static_cast<std::size_t>(n)), options_(options) {}

  std::vector<ValidationRecord> records;

  void add(const std::string& suite, const std::string& test, double b, double z, double statistic,
           double threshold) {
    records.push_back({suite, test, b, z, statistic, threshold});
  }

  RngStream stream() { return root_.split(next_stream_++); }

  std::vector<double> draws(const std::function<double(RngStream&)>& one) {
    RngStream rng = stream();
    std::vector<double> out(n_);
    for (double& x : out) x = one(rng);
    return out;
  }

  std::size_t n() const { return n_; }
  const AlternateOptions& options() const { return options_; }

 private:
  RngStream root_;
  std::uint64_t next_stream_ = 0;
  std::size_t n_;
  AlternateOptions options_;
};

void suite_moments(Harness& h) {
  for (const double b : {0.5, 1.0, 2.0, 3.5, 4.0, 12.0, 50.0, 150.0, 200.0}) {
    for (const double z : {0.0, 1.0, 2.0}) {
      const PgParams params(b, z);
      const PgSampler sampler(params, Method::automatic, Thresholds{}, h.options());
      const auto xs = h.draws([&](RngStream& r) { return sampler(r); });
      const Moments m = summarize(xs);
      const double mean = pg_mean(params);
      const double allowance =
          method_is_exact(sampler.method()) ? 4.0 : std::max(4.0, 0.01 * mean / m.standard_error());
      h.add("moments", "mean_z", b, z, m.mean_z(mean), allowance);
      h.add("moments", "var_rel", b, z, std::fabs(m.variance() / pg_var(params) - 1), 0.05);
    }
  }
}

void suite_oracle(Harness& h) {
  const std::pair<double, double> cells[] = {{1, 0}, {1, 2}, {2, 1}, {3.5, 0.5}};
  for (const auto& [b, z] : cells) {
    const PgParams params(b, z);
    const PgSampler hybrid(params, Method::automatic, Thresholds{}, h.options());
    const PgSampler oracle(params, Method::gamma_sum);
    const auto xs = h.draws([&](RngStream& r) { return hybrid(r); });
    const auto ys = h.draws([&](RngStream& r) { return oracle(r); });
    const KsResult ks = ks_two_sample(xs, ys);
    h.add("oracle", "ks_vs_gamma_sum", b, z, ks.statistic, ks.critical(ks_level));
  }
}

void suite_cross(Harness& h) {
  for (const double z : {0.0, 2.0}) {
    const DevroyeSampler devroye(z);
    const AlternateSampler alternate(1.0, z, h.options());
    const auto xs = h.draws([&](RngStream& r) { return devroye(r); });
    const auto ys = h.draws([&](RngStream& r) { return alternate(r); });
    const KsResult ks = ks_two_sample(xs, ys);
    h.add("cross", "devroye_vs_alternate", 1, z, ks.statistic, ks.critical(ks_level));
  }
}

void suite_domination(Harness& h) {
  const auto grid = log_spaced_grid(0.01, 20, 2000);
  for (int i = 0; i <= 30; ++i) {
    const double shape = 1.0 + 0.1 * i;
    const DominationReport r = verify_domination(shape, grid);
    h.add("domination", "max_rho_left", shape, 0, r.max_rho_left, 1 + domination_slack);
    h.add("domination", "max_rho_right", shape, 0, r.max_rho_right, 1 + domination_slack);
    h.add("domination", "rho_left_nonincreasing", shape, 0, r.rho_left_nonincreasing ? 0 : 1, 0);
    h.add("domination", "rho_right_nondecreasing", shape, 0, r.rho_right_nondecreasing ? 0 : 1, 0);
  }
}

void suite_envelope(Harness& h) {
  const std::pair<double, double> cells[] = {{4, 0}, {13, 0}, {16, 1}, {64, 2}, {170, 0.5}};
  for (const auto& [n, z] : cells) {
    double worst = std::numeric_limits<double>::infinity();
    try {
      const SaddleEnvelope env = build_envelope(n, z);
      worst = -std::numeric_limits<double>::infinity();
      for (const double x : log_spaced_grid(env.m / 20, 20 * env.m, 2000)) {
        worst = std::max(worst, log_sp_density(x, n, z) - env.log_kernel(x));
      }
    } catch (const domination_error&) {
    }
    h.add("envelope", "max_log_sp_over_k", n, z, worst, std::log1p(envelope_slack));
  }
}

void suite_conjecture(Harness& h) {
  for (const double z : {0.0, 1.0, 4.0}) {
    const ConcavityReport c = check_eta_concavity(z);
    h.add("conjecture", "eta_second_diff_left", 0, z, c.max_second_diff_left, 1e-9);
    h.add("conjecture", "eta_second_diff_right", 0, z, c.max_second_diff_right, 1e-9);
    const CurvatureReport k = check_curvature_ratios(z);
    h.add("conjecture", "kpp_over_x2_increasing", 0, z, k.ratio2_increasing ? 0 : 1, 0);
    h.add("conjecture", "kpp_over_x3_decreasing", 0, z, k.ratio3_decreasing ? 0 : 1, 0);
    h.add("conjecture", "alpha_bounds", 0, z, k.alpha_bounds_hold() ? 0 : 1, 0);
  }
}

const std::vector<std::pair<std::string, void (*)(Harness&)>>& all_suites() {
  static const std::vector<std::pair<std::string, void (*)(Harness&)>> suites = {
      {"moments", suite_moments},       {"oracle", suite_oracle},
      {"cross", suite_cross},           {"domination", suite_domination},
      {"envelope", suite_envelope},     {"conjecture", suite_conjecture},
  };
  return suites;
}

}  // namespace

int run_validate(const Common& common, const ValidateArgs& args, std::ostream& out) {
  std::set<std::string> wanted(args.suites.begin(), args.suites.end());
  for (const auto& name : wanted) {
    const auto& suites = all_suites();
    if (std::none_of(suites.begin(), suites.end(), [&](const auto& s) { return s.first == name; })) {
      throw std::invalid_argument("validate: unknown suite `" + name + "`");
    }
  }
  const auto table = load_table(common);
  AlternateOptions options;
  if (table) options.table = &*table;

  Harness harness(common.seed, args.n, options);
  for (const auto& [name, run] : all_suites()) {
    if (wanted.empty() || wanted.count(name)) run(harness);
  }

  const std::set<std::string> corrupt(args.corrupt.begin(), args.corrupt.end());
  bool all_pass = true;
  out << "suite,test,b,z,statistic,threshold,pass\n";
  for (auto& r : harness.records) {
    if (corrupt.count(r.test)) r.threshold = -1;
    r.pass = std::isfinite(r.statistic) && r.statistic <= r.threshold;
    out << r.suite << ',' << r.test << ',' << fmt(r.b) << ',' << fmt(r.z) << ','
        << fmt(r.statistic) << ',' << fmt(r.threshold) << ',' << (r.pass ? "true" : "false")
        << '\n';
    if (!r.pass) {
      all_pass = false;
      std::fprintf(stderr, "FAIL %s/%s b=%s z=%s statistic=%s threshold=%s\n", r.suite.c_str(),
                   r.test.c_str(), fmt(r.b).c_str(), fmt(r.z).c_str(), fmt(r.statistic).c_str(),
                   fmt(r.threshold).c_str());
    }
  }
  return all_pass ? ok : validation_failed;
}

}  // namespace pgdraw
