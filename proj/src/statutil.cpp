#include "netmosaic/statutil.hpp"

#include "netmosaic/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace netmosaic {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    // Two independent 64-bit lanes form the 128-bit key; eight 32-bit words of
    // splitmix output feed the seed sequence.
    std::uint64_t lo = mix64(seed);
    std::uint64_t hi = mix64(stream ^ 0xd1b54a32d192ed03ULL);
    std::array<std::uint32_t, 8> words{};
    std::uint64_t state = lo ^ mix64(hi + lo);
    for (std::size_t k = 0; k < words.size(); k += 2) {
        state = mix64(state + (k % 4 == 0 ? lo : hi));
        words[k] = static_cast<std::uint32_t>(state);
        words[k + 1] = static_cast<std::uint32_t>(state >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw InvalidInput("RngStream::below: bound must be positive");
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x <= limit) return x % bound;
    }
}

double RngStream::normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream rng_for_rep(std::uint64_t master_seed, std::uint64_t rep) { return RngStream(master_seed, rep); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("normal_quantile: p must lie in (0, 1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement. Work with the smaller tail to keep the residual exact.
    const double e = (p < 0.5) ? (normal_cdf(x) - p) : -(normal_cdf(-x) - (1.0 - p));
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double ks_distance_std_normal(std::span<const double> samples) {
    if (samples.size() < 20) throw InvalidInput("ks_distance_std_normal: need at least 20 samples");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double m = static_cast<double>(xs.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = normal_cdf(xs[i]);
        dist = std::max({dist, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return dist;
}

namespace {

double poly(const double* cc, int nord, double x) {
    double ret = cc[0];
    if (nord > 1) {
        double p = x * cc[nord - 1];
        for (int j = nord - 2; j > 0; --j) p = (p + cc[j]) * x;
        ret += p;
    }
    return ret;
}

}  // namespace

ShapiroWilk shapiro_wilk(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 20 || n > 5000) throw InvalidInput("shapiro_wilk: sample size must lie in [20, 5000]");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 0.0)) throw DegenerateInput("shapiro_wilk: sample has zero range");

    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    // Half-vector of coefficients for the lower order statistics (positive).
    const std::size_t half = n / 2;
    const double an = static_cast<double>(n);
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - m[0] / ssumm2;
    const double a2 = -m[1] / ssumm2 + poly(c2, 6, rsn);
    const double fac =
        std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    std::vector<double> a(half);
    a[0] = a1;
    a[1] = a2;
    for (std::size_t i = 2; i < half; ++i) a[i] = -m[i] / fac;

    // W = (sum a_i x_(i))^2 / sum (x - mean)^2 with antisymmetric coefficients.
    double num = 0.0;
    for (std::size_t i = 0; i < half; ++i) num += a[i] * (x[n - 1 - i] - x[i]);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= an;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double w = std::min(1.0, num * num / ss);

    const double lnn = std::log(an);
    const double mu = poly(c5, 4, lnn);
    const double sigma = std::exp(poly(c6, 3, lnn));
    const double z = (std::log1p(-w) - mu) / sigma;
    return {w, 1.0 - normal_cdf(z)};
}

}  // namespace netmosaic
