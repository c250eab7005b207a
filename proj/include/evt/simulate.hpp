#pragma once

#include <cstdint>
#include <vector>

#include "evt/distributions.hpp"
#include "evt/norming.hpp"

namespace evt {

// Counter-mode pseudo-random generator: output i of a stream is a hash of
// (seed, stream, i), so draws are reproducible, order-independent, and
// streams can be consumed in parallel without shared state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t bits(std::uint64_t i) const;
  double uniform(std::uint64_t i) const;  // in the open interval (0, 1)

 private:
  std::uint64_t key_;
};

// i.i.d. draws by inversion of counter-mode uniforms (stream 0).
std::vector<double> sample_gw(const GenWeibull& p, std::size_t count, std::uint64_t seed);
std::vector<double> sample_gamma(const Gamma& g, std::size_t count, std::uint64_t seed);

struct ExperimentConfig {
  Distribution dist;
  long long n = 1;          // block size: each maximum is over n draws
  long long reps = 1;       // number of maxima
  std::uint64_t seed = 0;
  Method method = Method::exact;
};

struct MaximaResult {
  std::vector<double> normalized;  // (M_n - b)/a, ordered by replicate
  std::vector<double> raw;         // M_n, kept when requested
  NormingConstants constants;
};

// Replicate r draws its block from stream r, so two runs with the same seed
// but different norming methods see identical raw maxima (common random
// numbers) and differ only through (a, b).
MaximaResult maxima_experiment(const ExperimentConfig& cfg, bool keep_raw = false);

}  // namespace evt
