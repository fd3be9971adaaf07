#pragma once
// Monte-Carlo ground truth: the random recurrence W_{n+1} = U...U (W_n + Λ)
// with l independent uniform factors, the equivalent continuous-time
// shot-noise sum W_T = Σ Λ_k e^{-(T - t_k)} over (every l-th) unit-rate
// Poisson arrival, amplitude sampling for the supported laws, histograms,
// and Kolmogorov-Smirnov statistics.

#include "shotnoise/grid.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shotnoise {

struct AmplitudeLaw {
  enum class Tag {
    deterministic,            // always c
    gamma,                    // Gamma(shape a, unit scale)
    beta,                     // Beta(a, b)
    laplace,                  // two-sided exponential, scale 1/a
    cauchy,                   // standard Cauchy
    normal,                   // standard normal
    arcsine,                  // cos(pi U), density 1/(pi sqrt(1-x^2)) on (-1,1)
    bernoulli,                // +1 / -1 equiprobable
    arcsine_plus_bernoulli,   // cos(pi V) + Δ, Δ = ±1 equiprobable
  };
  Tag tag = Tag::arcsine_plus_bernoulli;
  double p1 = 0.0, p2 = 0.0;

  static AmplitudeLaw make_deterministic(double c) {
    return {Tag::deterministic, c, 0.0};
  }
  static AmplitudeLaw make_gamma(double a) { return {Tag::gamma, a, 0.0}; }
  static AmplitudeLaw make_beta(double a, double b) {
    return {Tag::beta, a, b};
  }
  static AmplitudeLaw make_laplace(double a) { return {Tag::laplace, a, 0.0}; }
  static AmplitudeLaw make(Tag t) { return {t, 0.0, 0.0}; }

  void validate() const;  // positive parameters where required
};

struct SimulationConfig {
  AmplitudeLaw law;
  int l = 1;                  // number of uniform factors per step
  long n_samples = 0;
  int burn_in = 64;
  std::uint64_t seed = 0;
  double poisson_rate = 1.0;  // continuous-time mode only

  void validate() const;  // l >= 1, burn_in >= 50, n_samples >= 1000
};

// xoshiro256++ with per-chain streams seeded by splitmix64(seed + chain)
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t chain);
  std::uint64_t next_u64();
  double uniform();           // in [0, 1)
  double uniform_positive();  // in (0, 1)

 private:
  std::uint64_t s_[4];
};

double sample_amplitude(const AmplitudeLaw& law, RngStream& rng);

// independent chains: one sample per chain, each iterated burn_in steps from
// W = 0; deterministic for fixed seed, merged by chain index
std::vector<double> simulate_recurrence(const SimulationConfig& cfg);

// Poisson arrivals on [0, T]; amplitudes attach at every l-th arrival so the
// gap between attached events is Gamma(l, 1), matching the product of l
// uniform decay factors in the recurrence
std::vector<double> simulate_shot_noise(const SimulationConfig& cfg, double T);

// exact one-sample KS statistic against a monotone cdf
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// exact two-sample KS statistic
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// density-normalized histogram with per-bin standard errors; extra columns
// "stderr" and "count"; empty bins carry zero density and infinite stderr
DensityGrid histogram(const std::vector<double>& samples, int bins, double lo,
                      double hi);

// convenience moments
double sample_moment(const std::vector<double>& v, int k);

}  // namespace shotnoise
