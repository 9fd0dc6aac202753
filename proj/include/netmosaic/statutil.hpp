#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace netmosaic {

/// Reproducible random stream. The engine is a std::mt19937_64 whose seed
/// sequence is derived from (seed, stream) through a splitmix64 mix, and all
/// floating-point conversions are done here rather than through the
/// implementation-defined std distributions, so draws are identical across
/// standard libraries.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    /// Uniform integer on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// +1 or -1 with equal probability.
    int rademacher() { return (engine_() >> 63) ? 1 : -1; }
    /// Standard normal via Box-Muller (one draw per call, no caching).
    double normal();
    double exponential() { return -std::log(uniform_pos()); }

private:
    std::mt19937_64 engine_;
};

/// Independent stream for Monte Carlo replication `rep` of an experiment.
RngStream rng_for_rep(std::uint64_t master_seed, std::uint64_t rep);

/// splitmix64 finalizer; also used to derive per-cell seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Standard normal CDF via std::erfc.
double normal_cdf(double z);

/// Inverse of normal_cdf on (0, 1). Acklam's rational approximation followed
/// by one Halley step against normal_cdf.
double normal_quantile(double p);

/// sup_x |F_m(x) - Phi(x)| for the empirical CDF F_m of `samples` (m >= 20).
double ks_distance_std_normal(std::span<const double> samples);

struct ShapiroWilk {
    double w;
    double p_value;
};

/// Shapiro-Wilk W test with Royston's (1995) coefficient and p-value
/// approximations. Requires 20 <= size <= 5000 and nonzero range.
ShapiroWilk shapiro_wilk(std::span<const double> samples);

inline double normality_pvalue(std::span<const double> samples) { return shapiro_wilk(samples).p_value; }

}  // namespace netmosaic
