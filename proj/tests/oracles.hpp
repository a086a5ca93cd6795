// Test-only oracles, kept independent of the library paths they check:
// a from-scratch BFS over the Heisenberg Cayley graph, a naive triple-loop
// matrix product, and the direct-summation route for the Schur constant.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "wka/complexmat.hpp"

namespace oracle {

/// Word length in the discrete Heisenberg group by plain breadth-first search,
/// written against the raw coordinate arithmetic (no library group code).
inline std::int64_t heisenberg_word_length(std::array<std::int64_t, 3> target, int r_cap = 12) {
    using E = std::array<std::int64_t, 3>;
    auto mul = [](E a, E b) { return E{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]}; };
    const std::vector<E> gens = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    std::map<E, int> dist;
    std::vector<E> frontier = {{0, 0, 0}};
    dist[{0, 0, 0}] = 0;
    if (target == E{0, 0, 0}) return 0;
    for (int r = 1; r <= r_cap; ++r) {
        std::vector<E> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                E h = mul(g, s);
                if (dist.emplace(h, r).second) {
                    if (h == target) return r;
                    next.push_back(h);
                }
            }
        frontier = std::move(next);
    }
    return -1;
}

/// Ball sizes of the Heisenberg group via the same BFS.
inline std::vector<std::uint64_t> heisenberg_ball_sizes(int r_max) {
    using E = std::array<std::int64_t, 3>;
    auto mul = [](E a, E b) { return E{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]}; };
    const std::vector<E> gens = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
    std::map<E, int> dist;
    std::vector<E> frontier = {{0, 0, 0}};
    dist[{0, 0, 0}] = 0;
    std::vector<std::uint64_t> sizes = {1};
    for (int r = 1; r <= r_max; ++r) {
        std::vector<E> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                E h = mul(g, s);
                if (dist.emplace(h, r).second) next.push_back(h);
            }
        sizes.push_back(sizes.back() + next.size());
        frontier = std::move(next);
    }
    return sizes;
}

/// l1-ball cardinality in Z^d: sum_k 2^k C(d,k) C(r,k).
inline std::uint64_t lattice_ball_size(int d, std::uint64_t r) {
    long double total = 0.0L;
    for (int k = 0; k <= d && static_cast<std::uint64_t>(k) <= r; ++k) {
        long double cdk = 1.0L, crk = 1.0L, p2 = 1.0L;
        for (int i = 0; i < k; ++i) {
            cdk = cdk * (d - i) / (i + 1);
            crk = crk * static_cast<long double>(r - i) / (i + 1);
            p2 *= 2.0L;
        }
        total += p2 * cdk * crk;
    }
    return static_cast<std::uint64_t>(llroundl(total));
}

/// Plain triple loop, no blocking or skipping.
inline wka::CoeffMatrix naive_matmul(const wka::CoeffMatrix& x, const wka::CoeffMatrix& y) {
    const int d = x.dim();
    wka::CoeffMatrix r(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            wka::cplx s{0.0, 0.0};
            for (int k = 0; k < d; ++k) s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

/// Direct summation of C0^2 = sum_n #B(e,n+1) (1+n)^{-2a} with caller-supplied
/// exact ball sizes extended by the closed form; summed far past r_max so the
/// truncation error is negligible at test tolerances.
inline double schur_constant_direct_z(double a, std::uint64_t n_terms = 2000000) {
    long double s = 0.0L;
    for (std::uint64_t n = 0; n < n_terms; ++n)
        s += (2.0L * (n + 1) + 1.0L) * std::pow(1.0L + n, -2.0L * static_cast<long double>(a));
    return std::sqrt(static_cast<double>(s));
}

inline double schur_constant_direct_z2(double a, std::uint64_t n_terms = 2000000) {
    long double s = 0.0L;
    for (std::uint64_t n = 0; n < n_terms; ++n) {
        const long double m = static_cast<long double>(n + 1);
        s += (2.0L * m * m + 2.0L * m + 1.0L) * std::pow(1.0L + n, -2.0L * static_cast<long double>(a));
    }
    return std::sqrt(static_cast<double>(s));
}

}  // namespace oracle
