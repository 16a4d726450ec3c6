// Draws the auxiliary variables omega_i ~ PG(1, psi_i) of a logistic model for
// a handful of linear predictors, and compares Monte Carlo means with
// E[omega_i] = tanh(psi_i/2) / (2 psi_i).

#include <cstdio>
#include <vector>

#include "polyagamma/polyagamma.hpp"

int main() {
  using namespace polyagamma;
  const std::vector<double> psi{-3.0, -0.5, 0.0, 0.8, 2.5, 6.0};
  constexpr std::size_t draws = 20000;

  RngStream rng(2024);
  std::vector<double> buffer(draws);
  std::printf("%8s %10s %10s %10s  %s\n", "psi", "mc_mean", "exact", "z_score", "method");
  for (const double p : psi) {
    const PgSampler omega(PgParams(1.0, p));
    omega.fill(buffer, rng);
    const Moments m = summarize(buffer);
    const double exact = pg_mean(PgParams(1.0, p));
    std::printf("%8.2f %10.6f %10.6f %10.2f  %s\n", p, m.mean, exact, m.mean_z(exact),
                method_name(omega.method()));
  }

  // Larger shapes go through the other samplers.
  for (const double b : {3.5, 40.0, 500.0}) {
    const PgSampler s(PgParams(b, 1.0));
    s.fill(buffer, rng);
    const Moments m = summarize(buffer);
    std::printf("b=%6.1f mean %.5f (exact %.5f) var %.5f (exact %.5f)  %s\n", b, m.mean,
                pg_mean(PgParams(b, 1.0)), m.variance(), pg_var(PgParams(b, 1.0)),
                method_name(s.method()));
  }
}
