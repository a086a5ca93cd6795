#include "wka/complexmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wka/errors.hpp"

namespace wka {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CoeffMatrix CoeffMatrix::identity(int dim) {
    CoeffMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = cplx{1.0, 0.0};
    return m;
}

CoeffMatrix CoeffMatrix::adjoint() const {
    CoeffMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

CoeffMatrix& CoeffMatrix::operator+=(const CoeffMatrix& o) {
    if (dim_ != o.dim_) throw MismatchError("matrix dimension mismatch in +");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CoeffMatrix& CoeffMatrix::operator-=(const CoeffMatrix& o) {
    if (dim_ != o.dim_) throw MismatchError("matrix dimension mismatch in -");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CoeffMatrix& CoeffMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

double CoeffMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CoeffMatrix matmul(const CoeffMatrix& x, const CoeffMatrix& y) {
    if (x.dim() != y.dim()) throw MismatchError("matrix dimension mismatch in matmul");
    const int d = x.dim();
    CoeffMatrix r(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cplx xik = x.at(i, k);
            if (xik == cplx{}) continue;
            for (int j = 0; j < d; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    }
    return r;
}

void accum_matvec(const CoeffMatrix& x_mat, const cplx* x, cplx* y) {
    const int d = x_mat.dim();
    const cplx* m = x_mat.data().data();
    if (d == 1) {
        y[0] += m[0] * x[0];
        return;
    }
    if (d == 2) {
        y[0] += m[0] * x[0] + m[1] * x[1];
        y[1] += m[2] * x[0] + m[3] * x[1];
        return;
    }
    for (int i = 0; i < d; ++i) {
        cplx s{0.0, 0.0};
        for (int j = 0; j < d; ++j) s += m[i * d + j] * x[j];
        y[i] += s;
    }
}

void accum_matvec_adj(const CoeffMatrix& x_mat, const cplx* x, cplx* y) {
    const int d = x_mat.dim();
    const cplx* m = x_mat.data().data();
    if (d == 1) {
        y[0] += std::conj(m[0]) * x[0];
        return;
    }
    if (d == 2) {
        y[0] += std::conj(m[0]) * x[0] + std::conj(m[2]) * x[1];
        y[1] += std::conj(m[1]) * x[0] + std::conj(m[3]) * x[1];
        return;
    }
    for (int i = 0; i < d; ++i) {
        cplx s{0.0, 0.0};
        for (int j = 0; j < d; ++j) s += std::conj(m[j * d + i]) * x[j];
        y[i] += s;
    }
}

namespace {

// One pass of v <- X*X v, returning the Rayleigh quotient <v, X*X v> (real).
double gram_apply(const CoeffMatrix& x, const std::vector<cplx>& v, std::vector<cplx>& tmp, std::vector<cplx>& out) {
    const int d = x.dim();
    std::fill(tmp.begin(), tmp.end(), cplx{});
    std::fill(out.begin(), out.end(), cplx{});
    accum_matvec(x, v.data(), tmp.data());
    accum_matvec_adj(x, tmp.data(), out.data());
    double q = 0.0;
    for (int i = 0; i < d; ++i) q += (std::conj(v[i]) * out[i]).real();
    return q;
}

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

bool power_iterate(const CoeffMatrix& x, std::vector<cplx> v, double tol, int max_iter, double& lambda_out) {
    const int d = x.dim();
    std::vector<cplx> tmp(d), out(d);
    const double nv = vec_norm(v);
    if (nv == 0.0) return false;
    for (auto& z : v) z /= nv;
    double lambda = 0.0;
    double prev_delta = -1.0;
    // Monotone Rayleigh quotients; stop when the Aitken projection of the
    // remaining increments is under tol * q.
    for (int it = 0; it < max_iter; ++it) {
        const double q = gram_apply(x, v, tmp, out);
        if (it > 0) {
            const double delta = q - lambda;
            const double scale_q = std::max(q, 1e-300);
            if (delta <= 0.0) {
                lambda_out = q;
                return true;
            }
            if (prev_delta > 0.0) {
                const double rho = std::min(delta / prev_delta, 0.999);
                if (delta <= tol * scale_q && delta * rho / (1.0 - rho) <= tol * scale_q) {
                    lambda_out = q;
                    return true;
                }
            }
            prev_delta = delta;
        }
        lambda = q;
        const double nz = vec_norm(out);
        if (nz == 0.0) {  // v in the kernel of X
            lambda_out = 0.0;
            return true;
        }
        for (int i = 0; i < d; ++i) v[i] = out[i] / nz;
    }
    lambda_out = lambda;
    return false;
}

}  // namespace

double CoeffMatrix::op_norm(double tol) const {
    if (dim_ == 0) return 0.0;
    if (max_abs_entry() == 0.0) return 0.0;
    if (dim_ == 1) return std::abs(a_[0]);
    if (dim_ == 2) {
        // Exact top eigenvalue of the 2x2 Gram matrix.
        const double g00 = std::norm(a_[0]) + std::norm(a_[2]);
        const double g11 = std::norm(a_[1]) + std::norm(a_[3]);
        const cplx g01 = std::conj(a_[0]) * a_[1] + std::conj(a_[2]) * a_[3];
        const double mean = 0.5 * (g00 + g11);
        const double disc = std::sqrt(0.25 * (g00 - g11) * (g00 - g11) + std::norm(g01));
        return std::sqrt(std::max(mean + disc, 0.0));
    }
    constexpr int kMaxIter = 10000;

    std::vector<cplx> start(dim_, cplx{1.0, 0.0});
    double lambda = 0.0;
    if (power_iterate(*this, start, tol, kMaxIter, lambda)) return std::sqrt(std::max(lambda, 0.0));

    for (int i = 0; i < dim_; ++i) start[i] = cplx{(i % 2 == 0) ? 1.0 : -1.0, 0.0};
    if (power_iterate(*this, start, tol, kMaxIter, lambda)) return std::sqrt(std::max(lambda, 0.0));

    // Degenerate gap: dense eigensolve of X*X.
    std::vector<cplx> gram(static_cast<std::size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < dim_; ++k) s += std::conj(at(k, i)) * at(k, j);
            gram[static_cast<std::size_t>(i) * dim_ + j] = s;
        }
    const auto eigs = hermitian_eigenvalues(std::move(gram), dim_);
    return std::sqrt(std::max(eigs.back(), 0.0));
}

std::vector<double> hermitian_eigenvalues(std::vector<cplx> h, int n) {
    auto at = [&](int i, int j) -> cplx& { return h[static_cast<std::size_t>(i) * n + j]; };
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, frob = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double w = std::norm(at(i, j));
                frob += w;
                if (i != j) off += w;
            }
        if (off <= 1e-28 * frob || off == 0.0) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = at(p, q);
                const double apq = std::abs(hpq);
                if (apq < 1e-300) continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                // Phase out h_pq (D = diag(1, e^{-i phi}) makes the 2x2 block
                // real symmetric), then the classical real rotation.
                const cplx e = std::conj(hpq) / apq;  // e^{-i phi}
                const double theta = 0.5 * std::atan2(2.0 * apq, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cplx se = s * e;
                for (int k = 0; k < n; ++k) {  // H <- H * (D R)
                    const cplx hkp = at(k, p);
                    const cplx hkq = at(k, q);
                    at(k, p) = c * hkp + se * hkq;
                    at(k, q) = -s * hkp + c * e * hkq;
                }
                const cplx ec = std::conj(e);
                for (int k = 0; k < n; ++k) {  // H <- (D R)^* H
                    const cplx hpk = at(p, k);
                    const cplx hqk = at(q, k);
                    at(p, k) = c * hpk + s * ec * hqk;
                    at(q, k) = -s * hpk + c * ec * hqk;
                }
                at(p, q) = cplx{0.0, 0.0};
                at(q, p) = cplx{0.0, 0.0};
                at(p, p) = cplx{at(p, p).real(), 0.0};
                at(q, q) = cplx{at(q, q).real(), 0.0};
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace wka
