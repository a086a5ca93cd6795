#include "wka/dense_reference.hpp"

#include <algorithm>
#include <cmath>

#include "wka/errors.hpp"

namespace wka::ref {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx{1.0, 0.0};
    return m;
}

DenseMatrix dense_from_windowed(const WindowedKernel& k) {
    const int d = k.coeff_dim();
    DenseMatrix m(k.flat_dim());
    for (const auto& b : k.blocks())
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m.at(static_cast<std::size_t>(b.i) * d + r, static_cast<std::size_t>(b.j) * d + c) = b.value.at(r, c);
    return m;
}

DenseMatrix dense_matmul(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.n != y.n) throw MismatchError("dense_matmul dimension mismatch");
    DenseMatrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const cplx v = x.at(i, k);
            if (v == cplx{}) continue;
            for (std::size_t j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

DenseMatrix dense_adjoint(const DenseMatrix& x) {
    DenseMatrix r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) r.at(j, i) = std::conj(x.at(i, j));
    return r;
}

DenseMatrix lu_solve(DenseMatrix a, DenseMatrix b) {
    if (a.n != b.n) throw MismatchError("lu_solve dimension mismatch");
    const std::size_t n = a.n;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r)
            if (const double v = std::abs(a.at(r, col)); v > best) {
                best = v;
                piv = r;
            }
        if (best < 1e-300) throw NotInvertibleError("lu_solve: matrix is numerically singular");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(b.at(piv, j), b.at(col, j));
        }
        const cplx inv_p = cplx{1.0, 0.0} / a.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a.at(r, col) * inv_p;
            if (f == cplx{}) continue;
            a.at(r, col) = cplx{};
            for (std::size_t j = col + 1; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
            for (std::size_t j = 0; j < n; ++j) b.at(r, j) -= f * b.at(col, j);
        }
    }
    // back substitution
    for (std::size_t col = n; col-- > 0;) {
        const cplx inv_p = cplx{1.0, 0.0} / a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) b.at(col, j) *= inv_p;
        for (std::size_t r = 0; r < col; ++r) {
            const cplx f = a.at(r, col);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) b.at(r, j) -= f * b.at(col, j);
        }
    }
    return b;
}

DenseMatrix lu_inverse(const DenseMatrix& a) { return lu_solve(a, DenseMatrix::identity(a.n)); }

std::vector<double> hermitian_eigenvalues_embedding(const DenseMatrix& h) {
    const std::size_t n = h.n;
    const std::size_t m = 2 * n;
    // S = [[Re H, -Im H], [Im H, Re H]] is symmetric with doubled spectrum.
    std::vector<double> s(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h.at(i, j).real();
            const double im = h.at(i, j).imag();
            s[i * m + j] = re;
            s[(i + n) * m + (j + n)] = re;
            s[i * m + (j + n)] = -im;
            s[(i + n) * m + j] = im;
        }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * m + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, frob = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                frob += at(i, j) * at(i, j);
                if (i != j) off += at(i, j) * at(i, j);
            }
        if (off <= 1e-28 * frob || off == 0.0) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * apq, at(p, p) - at(q, q));
                const double c = std::cos(theta);
                const double sn = std::sin(theta);
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp + sn * akq;
                    at(k, q) = -sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk + sn * aqk;
                    at(q, k) = -sn * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
    }
    std::vector<double> eig(m);
    for (std::size_t i = 0; i < m; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    // doubled spectrum: keep every other value
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (eig[2 * i] + eig[2 * i + 1]);
    return out;
}

double sigma_max(const DenseMatrix& a) {
    DenseMatrix gram = dense_matmul(dense_adjoint(a), a);
    const auto eig = hermitian_eigenvalues_embedding(gram);
    return std::sqrt(std::max(eig.back(), 0.0));
}

}  // namespace wka::ref
