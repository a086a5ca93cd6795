#include "wka/operator_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "wka/errors.hpp"

namespace wka {

double op_norm_2(const InvariantKernel& t, std::uint64_t window_radius, double tol, Exec ex) {
    if (window_radius < t.propagation())
        throw PreconditionError("op_norm_2 window radius " + std::to_string(window_radius) +
                                " is smaller than the kernel propagation " + std::to_string(t.propagation()));
    if (!(tol > 0.0)) throw ValidationError("op_norm_2 tolerance must be positive");
    return windowed_op_norm(window_kernel(t, window_radius), tol, ex);
}

SchurConstant schur_constant_detail(const GroupModel& g, const Weight& w, std::uint64_t r_max) {
    // Classify growth first on a radius the element budget can afford, so an
    // exponential-growth group is reported as such rather than as a resource
    // limit; the full-radius sums below still need the budget to hold.
    GrowthReport growth;
    std::uint64_t r_cls = r_max;
    for (;;) {
        try {
            growth = g.growth_analysis(r_cls);
            break;
        } catch (const ResourceLimitError&) {
            if (r_cls <= 4) throw;
            r_cls = std::max<std::uint64_t>(4, r_cls / 2);
        }
    }
    if (!growth.classified_polynomial)
        throw GrowthPreconditionError("growth precondition failed: " + g.name() +
                                      " has super-polynomial ball growth; polynomial u-growth is required");
    if (r_cls < r_max) growth = g.growth_analysis(r_max);  // polynomial: full radius must fit the budget
    const double a = w.exponent;
    if (!(2.0 * a > growth.degree_estimate + 2.0))
        throw DecayPreconditionError("decay precondition failed: need 2a > degree + 2, got 2a = " +
                                     std::to_string(2.0 * a) + " with fitted degree " +
                                     std::to_string(growth.degree_estimate));

    SchurConstant sc;
    sc.r_max = r_max;
    sc.degree_estimate = growth.degree_estimate;
    sc.growth_constant = growth.growth_constant;
    sc.conservative_degree = static_cast<int>(std::ceil(growth.degree_estimate));

    // Exact partial sums: n = 0..r_max-1 uses ball sizes at radii 1..r_max.
    double s = 0.0;
    for (std::uint64_t n = 0; n + 1 <= r_max; ++n)
        s += static_cast<double>(growth.ball_sizes[n + 1]) * std::pow(1.0 + static_cast<double>(n), -2.0 * a);
    sc.partial_sum = s;

    // Tail majorant sum_{n>=r_max} c (1+n)^{t-2a} via Euler-Maclaurin on
    // sum_{m>=M} m^{-p}, M = 1 + r_max, p = 2a - t (> 2 by the precondition).
    const double p = 2.0 * a - growth.degree_estimate;
    const double m0 = 1.0 + static_cast<double>(r_max);
    const double tail_core =
        std::pow(m0, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(m0, -p) + p * std::pow(m0, -p - 1.0) / 12.0;
    sc.tail_bound = growth.growth_constant * tail_core;

    if (!(sc.tail_bound < 1e-6 * sc.partial_sum))
        throw NonConvergenceError("schur_constant tail is not negligible at r_max = " + std::to_string(r_max) +
                                  " (tail/partial = " + format_double(sc.tail_bound / sc.partial_sum) +
                                  "); increase r_max");

    // 2x safety factor on the fitted tail that goes into the returned value.
    sc.c0 = std::sqrt(sc.partial_sum + 2.0 * sc.tail_bound);
    return sc;
}

double schur_constant(const GroupModel& g, const Weight& w, std::uint64_t r_max) {
    return schur_constant_detail(g, w, r_max).c0;
}

NormReport check_schur_bound(const InvariantKernel& t, const Weight& w, std::uint64_t window_radius,
                             std::uint64_t r_max, double tol) {
    const auto sc = schur_constant_detail(*t.group(), w, r_max);
    if (window_radius < t.propagation())
        throw PreconditionError("check_schur_bound window radius is smaller than the kernel propagation");

    NormReport rep;
    rep.window_radius = window_radius;
    rep.schur_constant = sc.c0;
    rep.weighted_norms[w.exponent] = weighted_norm(t, w);

    // Convergence trace over a few nested windows ending at window_radius.
    const std::uint64_t r0 = t.propagation();
    std::vector<std::uint64_t> radii;
    for (int i = 0; i <= 3; ++i)
        radii.push_back(r0 + (window_radius - r0) * static_cast<std::uint64_t>(i) / 3);
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (const auto r : radii) rep.convergence_trace.emplace_back(r, op_norm_2(t, r, tol));
    rep.norm_2_estimate = rep.convergence_trace.back().second;

    rep.schur_satisfied = rep.norm_2_estimate <= sc.c0 * rep.weighted_norms[w.exponent] + 1e-9;
    return rep;
}

TruncationError truncation_error(const InvariantKernel& t, const Weight& w, double r, std::uint64_t n) {
    if (!(r > 0.0)) throw PreconditionError("truncation_error needs r > 0");
    const Envelope env = envelope(t);
    const double a = w.exponent;

    double tail_sq = 0.0;
    for (const auto& e : env.entries())
        if (e.length > n) tail_sq += e.value * e.value * std::pow(1.0 + static_cast<double>(e.length), 2.0 * a);

    TruncationError out;
    out.exact = std::sqrt(tail_sq);
    out.bound = std::pow(2.0 + static_cast<double>(n), -r) * weighted_norm(env, Weight(a + r));
    return out;
}

PowerNormFit power_norm_experiment(const InvariantKernel& t, const Weight& w, int n_max,
                                   std::uint64_t window_radius, double tol) {
    if (n_max < 3) throw PreconditionError("power_norm_experiment needs n_max >= 3");

    PowerNormFit fit;
    fit.norm_2 = op_norm_2(t, window_radius, tol);
    fit.norm_a = weighted_norm(t, w);

    InvariantKernel power = t;
    fit.power_norms.push_back(fit.norm_a);
    for (int k = 2; k <= n_max; ++k) {
        power = compose(power, t);
        const double nk = weighted_norm(power, w);
        if (!(nk < 1e300)) {
            fit.stopped_on_overflow = true;
            break;
        }
        if (nk <= 0.0) break;  // nilpotent: nothing left to fit
        fit.power_norms.push_back(nk);
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.power_norms.size(); ++i) {
        xs.push_back(static_cast<double>(i + 1));
        ys.push_back(std::log(fit.power_norms[i]));
    }
    const LineFit lf = fit_line(xs, ys);
    fit.residual = lf.residual_rms;

    const double l2 = std::log(fit.norm_2);
    const double la = std::log(fit.norm_a);
    fit.alpha = std::abs(l2) > 1e-12 ? lf.slope / l2 : 0.0;
    if (std::abs(la) > 1e-12) {
        fit.beta = lf.intercept / la;
        fit.c = 1.0;
    } else {
        fit.beta = 0.0;
        fit.c = std::exp(lf.intercept);
    }
    return fit;
}

}  // namespace wka
