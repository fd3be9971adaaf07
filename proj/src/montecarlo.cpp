#include "shotnoise/montecarlo.hpp"

#include "shotnoise/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shotnoise {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

double sample_normal(RngStream& rng) {
  // Marsaglia polar method
  for (;;) {
    double u = 2.0 * rng.uniform() - 1.0;
    double v = 2.0 * rng.uniform() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_gamma(double shape, RngStream& rng) {
  if (shape < 1.0) {
    // boost to shape+1 and scale back (Marsaglia-Tsang)
    double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform_positive(), 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z = sample_normal(rng);
    double t = 1.0 + c * z;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = rng.uniform_positive();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace

void AmplitudeLaw::validate() const {
  switch (tag) {
    case Tag::gamma:
    case Tag::laplace:
      if (!(p1 > 0.0))
        throw std::invalid_argument("AmplitudeLaw: parameter must be > 0");
      break;
    case Tag::beta:
      if (!(p1 > 0.0) || !(p2 > 0.0))
        throw std::invalid_argument("AmplitudeLaw: parameters must be > 0");
      break;
    case Tag::deterministic:
      if (!std::isfinite(p1))
        throw std::invalid_argument("AmplitudeLaw: value must be finite");
      break;
    default:
      break;
  }
}

void SimulationConfig::validate() const {
  law.validate();
  if (l < 1) throw std::invalid_argument("SimulationConfig: l must be >= 1");
  if (burn_in < 50)
    throw std::invalid_argument("SimulationConfig: burn_in must be >= 50");
  if (n_samples < 1000)
    throw std::invalid_argument("SimulationConfig: n_samples must be >= 1000");
  if (!(poisson_rate > 0.0))
    throw std::invalid_argument("SimulationConfig: poisson_rate must be > 0");
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t chain) {
  std::uint64_t x = seed + chain;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t r = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return r;
}

double RngStream::uniform() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_positive() {
  double u;
  do u = uniform();
  while (u == 0.0);
  return u;
}

double sample_amplitude(const AmplitudeLaw& law, RngStream& rng) {
  using Tag = AmplitudeLaw::Tag;
  switch (law.tag) {
    case Tag::deterministic:
      return law.p1;
    case Tag::gamma:
      return sample_gamma(law.p1, rng);
    case Tag::beta: {
      double g1 = sample_gamma(law.p1, rng);
      double g2 = sample_gamma(law.p2, rng);
      return g1 / (g1 + g2);
    }
    case Tag::laplace: {
      double u = rng.uniform_positive();
      double e = -std::log(u) / law.p1;
      return (rng.next_u64() & 1) ? e : -e;
    }
    case Tag::cauchy:
      return std::tan(kPi * (rng.uniform_positive() - 0.5));
    case Tag::normal:
      return sample_normal(rng);
    case Tag::arcsine:
      return std::cos(kPi * rng.uniform());
    case Tag::bernoulli:
      return (rng.next_u64() & 1) ? 1.0 : -1.0;
    case Tag::arcsine_plus_bernoulli:
    default:
      return std::cos(kPi * rng.uniform()) +
             ((rng.next_u64() & 1) ? 1.0 : -1.0);
  }
}

std::vector<double> simulate_recurrence(const SimulationConfig& cfg) {
  cfg.validate();
  std::vector<double> out((size_t)cfg.n_samples);
  for (long chain = 0; chain < cfg.n_samples; ++chain) {
    RngStream rng(cfg.seed, (std::uint64_t)chain);
    double w = 0.0;
    for (int step = 0; step < cfg.burn_in; ++step) {
      double lam = sample_amplitude(cfg.law, rng);
      double u = 1.0;
      for (int j = 0; j < cfg.l; ++j) u *= rng.uniform_positive();
      w = u * (w + lam);
    }
    out[(size_t)chain] = w;
  }
  return out;
}

std::vector<double> simulate_shot_noise(const SimulationConfig& cfg, double T) {
  cfg.validate();
  if (!(T >= 20.0))
    throw std::invalid_argument("simulate_shot_noise: T must be >= 20");
  std::vector<double> out((size_t)cfg.n_samples);
  for (long chain = 0; chain < cfg.n_samples; ++chain) {
    RngStream rng(cfg.seed, (std::uint64_t)chain);
    double t = 0.0, w = 0.0;
    int since_attach = 0;
    for (;;) {
      double gap = -std::log(rng.uniform_positive()) / cfg.poisson_rate;
      if (t + gap > T) break;
      t += gap;
      w *= std::exp(-gap);
      if (++since_attach == cfg.l) {
        since_attach = 0;
        w += sample_amplitude(cfg.law, rng);
      }
    }
    out[(size_t)chain] = w * std::exp(-(T - t));
  }
  return out;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.size() < 1000)
    throw std::invalid_argument("ks_distance: need >= 1000 samples");
  std::sort(samples.begin(), samples.end());
  double n = (double)samples.size();
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    d = std::max(d, std::abs(F - (double)(i + 1) / n));
    d = std::max(d, std::abs(F - (double)i / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 1000 || b.size() < 1000)
    throw std::invalid_argument("ks_two_sample: need >= 1000 samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs((double)i / a.size() - (double)j / b.size()));
  }
  return d;
}

DensityGrid histogram(const std::vector<double>& samples, int bins, double lo,
                      double hi) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("histogram: need hi > lo");
  std::vector<long> count(bins, 0);
  double width = (hi - lo) / bins;
  long inside = 0;
  for (double v : samples) {
    if (v < lo || v >= hi) continue;
    int k = (int)((v - lo) / width);
    if (k >= bins) k = bins - 1;
    ++count[k];
    ++inside;
  }
  DensityGrid g;
  g.method = "monte-carlo";
  g.step = width;
  g.extra = {{"stderr", {}}, {"count", {}}};
  double n = (double)samples.size();
  for (int k = 0; k < bins; ++k) {
    g.x.push_back(lo + (k + 0.5) * width);
    double p = count[k] / n;
    g.f.push_back(p / width);
    double se = count[k] > 0
                    ? std::sqrt(p * (1.0 - p) / n) / width
                    : std::numeric_limits<double>::infinity();
    g.extra[0].values.push_back(se);
    g.extra[1].values.push_back((double)count[k]);
  }
  g.err_estimate = inside > 0 ? 1.0 - inside / n : 1.0;  // out-of-range mass
  return g;
}

double sample_moment(const std::vector<double>& v, int k) {
  double s = 0.0;
  for (double x : v) s += std::pow(x, k);
  return s / (double)v.size();
}

}  // namespace shotnoise
