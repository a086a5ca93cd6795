#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wka {

using cplx = std::complex<double>;

/// SplitMix64: tiny deterministic PRNG stream, stable across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1).
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }
};

/// FNV-1a over raw bytes; used to derive per-element seeds from canonical forms.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t hash_ints(std::span<const std::int64_t> v, std::uint64_t salt = 0) {
    std::uint64_t h = fnv1a(&salt, sizeof salt);
    if (!v.empty()) h = fnv1a(v.data(), v.size() * sizeof(std::int64_t), h);
    return h;
}

/// Ordinary least squares line y = intercept + slope*x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;  // sqrt(mean squared residual)
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    LineFit f;
    const std::size_t n = x.size();
    if (n < 2) {
        f.intercept = n == 1 ? y[0] : 0.0;
        return f;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    f.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss += e * e;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}

/// Shortest text form that parses back to the same double ("%.17g" is always exact).
std::string format_double(double v);

}  // namespace wka
