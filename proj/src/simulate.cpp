#include "evt/simulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "evt/parallel.hpp"

namespace evt {

namespace {

// 64-bit finalizing mix (splitmix-style avalanche).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kStreamSalt = 0xda942042e4dd58b5ULL;
constexpr std::uint64_t kCounterStep = 0x9e3779b97f4a7c15ULL;

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream * kStreamSalt))) {}

std::uint64_t CounterRng::bits(std::uint64_t i) const { return mix64(key_ + i * kCounterStep); }

double CounterRng::uniform(std::uint64_t i) const {
  // 53 high bits, centered in the bucket: never exactly 0 or 1.
  return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample_gw(const GenWeibull& p, std::size_t count, std::uint64_t seed) {
  Distribution dist(p);
  CounterRng rng(seed, 0);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = dist.quantile(rng.uniform(i));
  return out;
}

std::vector<double> sample_gamma(const Gamma& g, std::size_t count, std::uint64_t seed) {
  g.validate();
  CounterRng rng(seed, 0);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = g.quantile(rng.uniform(i));
  return out;
}

MaximaResult maxima_experiment(const ExperimentConfig& cfg, bool keep_raw) {
  if (cfg.n < 1 || cfg.reps < 1)
    throw std::invalid_argument("maxima experiment: n and reps must be >= 1");
  // Block size 1 is allowed for parent-distribution checks; the constants
  // themselves are only defined from n = 2 up, so clamp there.
  NormingConstants nc =
      compute_constants(cfg.dist, cfg.method, std::max<long long>(cfg.n, 2));
  nc.n = cfg.n;

  MaximaResult result;
  result.constants = nc;
  result.normalized.resize(static_cast<std::size_t>(cfg.reps));
  if (keep_raw) result.raw.resize(static_cast<std::size_t>(cfg.reps));

  const auto n = static_cast<std::uint64_t>(cfg.n);
  parallel_for(0, static_cast<std::size_t>(cfg.reps), [&](std::size_t rep) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(rep));
    double m = -1e308;
    for (std::uint64_t i = 0; i < n; ++i)
      m = std::max(m, cfg.dist.quantile(rng.uniform(i)));
    if (keep_raw) result.raw[rep] = m;
    result.normalized[rep] = (m - nc.b) / nc.a;
  });
  return result;
}

}  // namespace evt
