#include "wka/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wka/errors.hpp"

namespace wka {

namespace {

constexpr std::uint64_t kIterationCap = 100000;

void check_hermitian(const WindowedKernel& p) {
    double scale = 0.0;
    for (const auto& b : p.blocks()) scale = std::max(scale, b.value.max_abs_entry());
    const double tol = 1e-8 * (1.0 + scale);
    for (const auto& b : p.blocks()) {
        const CoeffMatrix* other = p.find(b.j, b.i);
        const int d = p.coeff_dim();
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const cplx expect = other ? std::conj(other->at(c, r)) : cplx{};
                if (std::abs(b.value.at(r, c) - expect) > tol)
                    throw PreconditionError("spectral_bounds needs a Hermitian section");
            }
    }
}

}  // namespace

std::pair<double, double> spectral_bounds(const WindowedKernel& p, double tol, Exec ex) {
    if (!(tol > 0.0)) throw ValidationError("spectral_bounds tolerance must be positive");
    check_hermitian(p);

    // Iterate one notch tighter than the requested tolerance so the 10*tol
    // outward rounding below strictly brackets the spectrum.
    const double tol_inner = tol / 10.0;
    const double n0 = windowed_psd_top_eigenvalue(p, tol_inner, ex);
    WindowedKernel shifted = WindowedKernel::identity(p.group(), p.window_radius(), p.coeff_dim());
    shifted *= cplx{n0, 0.0};
    shifted -= p;
    const double mu = windowed_psd_top_eigenvalue(shifted, tol_inner, ex);
    const double m0 = n0 - mu;

    const double m = m0 * (1.0 - 10.0 * tol);
    const double n = n0 * (1.0 + 10.0 * tol);
    if (!(m > 0.0))
        throw NotInvertibleError("windowed T*T is numerically singular (lower spectral bound " + format_double(m0) +
                                 "); T is not invertible on this window");
    return {m, n};
}

NeumannResult neumann_inverse(const InvariantKernel& t, std::uint64_t window_radius,
                              const std::vector<Weight>& w_grid, double tol, Exec ex) {
    if (!(tol > 0.0)) throw ValidationError("neumann_inverse tolerance must be positive");
    if (window_radius < 3 * t.propagation())
        throw PreconditionError("neumann_inverse needs window radius >= 3 * propagation(T) = " +
                                std::to_string(3 * t.propagation()));

    const WindowedKernel tw = window_kernel(t, window_radius);
    const WindowedKernel tadj = adjoint_kernel(tw);
    const WindowedKernel p = compose_windowed(tadj, tw, ex);

    const auto [m, n] = spectral_bounds(p, std::min(tol, 1e-8), ex);
    const double scale = 2.0 / (m + n);

    const WindowedKernel ident = WindowedKernel::identity(t.group(), window_radius, t.coeff_dim());
    WindowedKernel contraction = ident;
    {
        WindowedKernel scaled_p = p;
        scaled_p *= cplx{scale, 0.0};
        contraction -= scaled_p;
    }

    const double q = windowed_op_norm(contraction, std::min(tol, 1e-8), ex);
    if (!(q < 1.0))
        throw NonConvergenceError("Neumann contraction estimate q = " + format_double(q) +
                                  " is not < 1; iteration cannot converge");

    InversionDiagnostics diag;
    diag.spectral_lower = m;
    diag.spectral_upper = n;
    diag.contraction_q = q;
    diag.window_radius = window_radius;
    diag.tolerance = tol;

    WindowedKernel partial = ident;  // S_0
    auto record = [&](const WindowedKernel& s) {
        const Envelope env = envelope(s, ex);
        for (const auto& w : w_grid) diag.weighted_norm_trace[w.exponent].push_back(weighted_norm(env, w));
    };
    record(partial);

    std::uint64_t k = 0;
    auto remainder = [&](std::uint64_t kk) { return std::pow(q, static_cast<double>(kk) + 1.0) / (1.0 - q); };
    while (remainder(k) >= tol) {
        ++k;
        if (k > kIterationCap)
            throw NonConvergenceError("Neumann iteration cap exceeded at q = " + format_double(q));
        partial = compose_windowed(contraction, partial, ex);
        partial += ident;  // S_k = I + A S_{k-1}
        record(partial);
    }
    diag.iterations = k;

    WindowedKernel p_inv = partial;
    p_inv *= cplx{scale, 0.0};

    const double tol_meas = std::min(tol, 1e-8);
    diag.residual_2 = windowed_op_norm(compose_windowed(p, p_inv, ex) - ident, tol_meas, ex);
    diag.residual_2_left = windowed_op_norm(compose_windowed(p_inv, p, ex) - ident, tol_meas, ex);

    NeumannResult result{compose_windowed(p_inv, tadj, ex), std::move(p_inv), std::move(diag)};

    try {
        const DecayFit df = decay_fit(result.inverse, t.propagation() + 1);
        result.diag.decay_exponent = df.exponent;
        result.diag.decay_fit_residual = df.residual;
    } catch (const InsufficientDataError&) {
        result.diag.decay_exponent = std::numeric_limits<double>::quiet_NaN();
        result.diag.decay_fit_residual = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

DecayFit decay_fit(const WindowedKernel& k, std::uint64_t l_min) {
    const Envelope env = envelope(k);
    std::vector<double> xs, ys;
    for (const auto& e : env.entries()) {
        if (e.length < l_min || e.value < 1e-30) continue;
        xs.push_back(std::log(1.0 + static_cast<double>(e.length)));
        ys.push_back(std::log(e.value));
    }
    if (xs.size() < 3)
        throw InsufficientDataError("decay_fit needs at least 3 usable diagonals beyond l_min, found " +
                                    std::to_string(xs.size()));
    const LineFit lf = fit_line(xs, ys);
    return {-lf.slope, lf.residual_rms, xs.size()};
}

InverseClosednessReport inverse_closedness_report(const InvariantKernel& t,
                                                  const std::vector<std::uint64_t>& window_schedule,
                                                  const std::vector<Weight>& w_grid, double tol, Exec ex) {
    if (window_schedule.empty()) throw PreconditionError("window schedule is empty");
    for (std::size_t i = 1; i < window_schedule.size(); ++i)
        if (window_schedule[i] <= window_schedule[i - 1])
            throw PreconditionError("window schedule must be strictly increasing");
    if (window_schedule.front() < 3 * t.propagation())
        throw PreconditionError("smallest window must be >= 3 * propagation(T)");

    InverseClosednessReport rep;
    rep.windows = window_schedule;

    std::vector<WindowedKernel> inverses;
    for (const auto r : window_schedule) {
        NeumannResult res = neumann_inverse(t, r, w_grid, tol, ex);
        const Envelope env = envelope(res.inverse, ex);
        for (const auto& w : w_grid) rep.weighted_norms[w.exponent].push_back(weighted_norm(env, w));
        if (std::isnan(res.diag.decay_exponent))
            rep.decay.push_back({0.0, 0.0, 0});
        else
            rep.decay.push_back({res.diag.decay_exponent, res.diag.decay_fit_residual, 3});
        rep.diagnostics.push_back(std::move(res.diag));
        inverses.push_back(std::move(res.inverse));
    }

    // Interior stabilization between consecutive windows.
    const auto& group = *t.group();
    const auto interior = group.ball(window_schedule.front() / 2);
    for (std::size_t wi = 1; wi < inverses.size(); ++wi) {
        const auto& ka = inverses[wi - 1];
        const auto& kb = inverses[wi];
        std::unordered_map<GroupElement, std::int32_t, GroupElementHash> ia, ib;
        for (std::size_t i = 0; i < ka.window().size(); ++i) ia.emplace(ka.window()[i], static_cast<std::int32_t>(i));
        for (std::size_t i = 0; i < kb.window().size(); ++i) ib.emplace(kb.window()[i], static_cast<std::int32_t>(i));
        double max_diff = 0.0;
        const int d = ka.coeff_dim();
        for (const auto& gi : interior)
            for (const auto& gj : interior) {
                const CoeffMatrix* ba = ka.find(ia.at(gi), ia.at(gj));
                const CoeffMatrix* bb = kb.find(ib.at(gi), ib.at(gj));
                if (!ba && !bb) continue;
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) {
                        const cplx va = ba ? ba->at(r, c) : cplx{};
                        const cplx vb = bb ? bb->at(r, c) : cplx{};
                        max_diff = std::max(max_diff, std::abs(va - vb));
                    }
            }
        rep.interior_diffs.push_back(max_diff);
    }
    return rep;
}

}  // namespace wka
