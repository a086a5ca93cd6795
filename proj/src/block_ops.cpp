#include "wka/block_ops.hpp"

#include <algorithm>
#include <cmath>

#include "wka/errors.hpp"

namespace wka {

void apply_windowed(const WindowedKernel& k, std::span<const cplx> x, std::span<cplx> y, Exec ex) {
    const auto n = static_cast<std::int64_t>(k.window_size());
    const int d = k.coeff_dim();
    if (x.size() != k.flat_dim() || y.size() != k.flat_dim())
        throw MismatchError("apply_windowed: vector length does not match the window");
    const std::int32_t* cols = k.flat_cols();
    const cplx* vals = k.flat_values();
    const std::size_t dd = static_cast<std::size_t>(d) * d;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == Exec::parallel && n > 16)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        cplx* yi = y.data() + static_cast<std::size_t>(i) * d;
        std::fill_n(yi, d, cplx{});
        for (std::size_t bk = k.row_begin(i); bk < k.row_end(i); ++bk) {
            const cplx* m = vals + bk * dd;
            const cplx* xj = x.data() + static_cast<std::size_t>(cols[bk]) * d;
            if (d == 1) {
                yi[0] += m[0] * xj[0];
            } else if (d == 2) {
                yi[0] += m[0] * xj[0] + m[1] * xj[1];
                yi[1] += m[2] * xj[0] + m[3] * xj[1];
            } else {
                for (int r = 0; r < d; ++r) {
                    cplx s{0.0, 0.0};
                    for (int c = 0; c < d; ++c) s += m[r * d + c] * xj[c];
                    yi[r] += s;
                }
            }
        }
    }
    (void)ex;
}

namespace {

double vec_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

double dot_real(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
    return s;
}

// Power iteration for lambda_max of the PSD operator x -> apply(x); apply must
// fill `out` from `in`. The Rayleigh quotients increase monotonically for PSD
// operators, so the geometric (Aitken) projection of the remaining increments
// bounds the error; convergence requires that projection to drop under tol*q.
template <typename ApplyFn>
bool psd_power_iterate(std::size_t dim, ApplyFn&& apply, std::vector<cplx> v, double tol, int max_iter,
                       double& lambda_out) {
    std::vector<cplx> av(dim);
    const double nv = vec_norm(v);
    if (nv == 0.0) return false;
    for (auto& z : v) z /= nv;
    double lambda = 0.0;
    double prev_delta = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        apply(std::span<const cplx>(v), std::span<cplx>(av));
        const double q = dot_real(v, av);
        if (it > 0) {
            const double delta = q - lambda;
            const double scale_q = std::max(std::abs(q), 1e-300);
            if (delta <= 0.0) {  // fp noise floor
                lambda_out = q;
                return true;
            }
            if (prev_delta > 0.0) {
                const double rho = std::min(delta / prev_delta, 0.999);
                const double projected = delta * rho / (1.0 - rho);
                if (delta <= tol * scale_q && projected <= tol * scale_q) {
                    lambda_out = q;
                    return true;
                }
            }
            prev_delta = delta;
        }
        lambda = q;
        const double na = vec_norm(av);
        if (na == 0.0) {
            lambda_out = 0.0;
            return true;
        }
        for (std::size_t i = 0; i < dim; ++i) v[i] = av[i] / na;
    }
    lambda_out = lambda;
    return false;
}

std::vector<cplx> ones_start(std::size_t dim) { return std::vector<cplx>(dim, cplx{1.0, 0.0}); }

std::vector<cplx> alternating_start(std::size_t dim) {
    std::vector<cplx> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = cplx{(i % 2 == 0) ? 1.0 : -1.0, 0.0};
    return v;
}

// Dense materialization of the section for the Jacobi fallback.
std::vector<cplx> dense_gram(const WindowedKernel& k) {
    const std::size_t dim = k.flat_dim();
    const int d = k.coeff_dim();
    std::vector<cplx> dense(dim * dim, cplx{});
    for (const auto& b : k.blocks())
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                dense[(static_cast<std::size_t>(b.i) * d + r) * dim + static_cast<std::size_t>(b.j) * d + c] =
                    b.value.at(r, c);
    // gram = K^* K  (dense, n^3; fallback only)
    std::vector<cplx> gram(dim * dim, cplx{});
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t kk = 0; kk < dim; ++kk) {
            const cplx a = std::conj(dense[kk * dim + i]);
            if (a == cplx{}) continue;
            for (std::size_t j = 0; j < dim; ++j) gram[i * dim + j] += a * dense[kk * dim + j];
        }
    return gram;
}

}  // namespace

double windowed_op_norm(const WindowedKernel& k, double tol, Exec ex) {
    if (k.blocks().empty()) return 0.0;
    const std::size_t dim = k.flat_dim();
    const WindowedKernel kadj = adjoint_kernel(k);
    std::vector<cplx> mid(dim);
    auto gram_apply = [&](std::span<const cplx> in, std::span<cplx> out) {
        apply_windowed(k, in, mid, ex);
        apply_windowed(kadj, mid, out, ex);
    };
    constexpr int kMaxIter = 10000;
    double lambda = 0.0;
    if (psd_power_iterate(dim, gram_apply, ones_start(dim), tol, kMaxIter, lambda))
        return std::sqrt(std::max(lambda, 0.0));
    if (psd_power_iterate(dim, gram_apply, alternating_start(dim), tol, kMaxIter, lambda))
        return std::sqrt(std::max(lambda, 0.0));
    const auto eig = hermitian_eigenvalues(dense_gram(k), static_cast<int>(dim));
    return std::sqrt(std::max(eig.back(), 0.0));
}

double windowed_psd_top_eigenvalue(const WindowedKernel& k, double tol, Exec ex) {
    if (k.blocks().empty()) return 0.0;
    const std::size_t dim = k.flat_dim();
    auto apply = [&](std::span<const cplx> in, std::span<cplx> out) { apply_windowed(k, in, out, ex); };
    constexpr int kMaxIter = 10000;
    double lambda = 0.0;
    if (psd_power_iterate(dim, apply, ones_start(dim), tol, kMaxIter, lambda)) return std::max(lambda, 0.0);
    if (psd_power_iterate(dim, apply, alternating_start(dim), tol, kMaxIter, lambda)) return std::max(lambda, 0.0);
    const auto eig = hermitian_eigenvalues(dense_gram(k), static_cast<int>(dim));
    return std::sqrt(std::max(eig.back(), 0.0));
}

}  // namespace wka
