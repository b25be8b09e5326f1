#pragma once

#include <complex>
#include <cstdint>

namespace coslab {

/// xoshiro256++ seeded through splitmix64. A fixed, platform-independent
/// algorithm: the same seed yields the same stream of bits everywhere, which
/// the reproducibility guarantees of the report tooling rely on. Do not swap
/// in std::mt19937 or std::*_distribution (both are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream for one trial of a randomized suite: stream `trial`
    /// under master seed `seed`. Trials can then run in any order (including
    /// concurrently) and still see identical inputs.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double();

    double uniform(double lo, double hi);

    /// Uniform over the square [-1,1) x [-1,1).
    std::complex<double> next_complex_box();

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

  private:
    std::uint64_t state_[4];
};

} // namespace coslab
