#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wka/block_ops.hpp"
#include "wka/kernel.hpp"

namespace wka {

/// Output of the Schur-bound check: finite-section l2 norm vs weighted norm.
struct NormReport {
    double norm_2_estimate = 0.0;
    std::uint64_t window_radius = 0;
    std::map<double, double> weighted_norms;  // exponent a -> ||T||_a
    double schur_constant = 0.0;              // C0
    bool schur_satisfied = false;
    std::vector<std::pair<std::uint64_t, double>> convergence_trace;  // (radius, norm_2 estimate)
};

/// Finite-section l2 operator norm: materializes T on B(e,R) and power-iterates
/// on T*T. A lower bound for the true norm, non-decreasing in R.
double op_norm_2(const InvariantKernel& t, std::uint64_t window_radius, double tol = 1e-10,
                 Exec ex = default_exec());

/// Everything schur_constant computes, for reporting.
struct SchurConstant {
    double c0 = 0.0;            // sqrt(partial_sum + 2*tail_bound)
    double partial_sum = 0.0;   // sum_{n<r_max} #B(e,n+1) (1+n)^{-2a}
    double tail_bound = 0.0;    // fitted-growth tail majorant sum_{n>=r_max} c (1+n)^{t-2a}
    double degree_estimate = 0.0;
    double growth_constant = 0.0;
    int conservative_degree = 0;  // ceil(degree_estimate), reported only
    std::uint64_t r_max = 0;
};

/// C0 with C0^2 = sum_n #B(e, n+1) (1+n)^{-2a}: exact partial sums plus a
/// fitted-growth tail majorant (2x safety on the added tail). Preconditions:
/// polynomial growth and 2a > degree + 2; the tail must be < 1e-6 of the
/// partial sum or a non-convergence error suggests a larger r_max.
SchurConstant schur_constant_detail(const GroupModel& g, const Weight& w, std::uint64_t r_max);
double schur_constant(const GroupModel& g, const Weight& w, std::uint64_t r_max);

/// Runs both sides of ||T||_2 <= C0 ||T||_a and reports. With the
/// preconditions satisfied, schur_satisfied = false would be a bug, not a
/// mathematical possibility.
NormReport check_schur_bound(const InvariantKernel& t, const Weight& w, std::uint64_t window_radius,
                             std::uint64_t r_max = 50, double tol = 1e-10);

struct TruncationError {
    double exact = 0.0;  // ||T - T_n||_a from the envelope tail
    double bound = 0.0;  // (2+n)^{-r} ||T||_{a+r}
};

/// Tail estimate of Def-2.3-style truncation: exact <= bound always.
TruncationError truncation_error(const InvariantKernel& t, const Weight& w, double r, std::uint64_t n);

/// Exploratory probe of the power-norm inequality ||T^n||_a <= C ||T||_2^alpha ||T||_a^beta.
/// Fits log||T^k||_a = p + q k; alpha = q / log||T||_2 and beta = p / log||T||_a
/// where those logs are nonzero (identification convention; the inequality's
/// constants are not pinned down, so this reports fits only).
struct PowerNormFit {
    double alpha = 0.0;
    double beta = 0.0;
    double c = 1.0;
    double residual = 0.0;
    double norm_2 = 0.0;
    double norm_a = 0.0;
    std::vector<double> power_norms;  // ||T^k||_a for k = 1..
    bool stopped_on_overflow = false;
};

PowerNormFit power_norm_experiment(const InvariantKernel& t, const Weight& w, int n_max,
                                   std::uint64_t window_radius, double tol = 1e-10);

}  // namespace wka
