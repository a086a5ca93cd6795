#pragma once

#include <span>
#include <vector>

#include "wka/numerics.hpp"

namespace wka {

/// Element of the coefficient algebra: a dense d x d complex matrix with the
/// operator (spectral) norm. Value semantics throughout.
class CoeffMatrix {
public:
    CoeffMatrix() = default;
    explicit CoeffMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, cplx{0.0, 0.0}) {}

    static CoeffMatrix identity(int dim);

    int dim() const { return dim_; }

    cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    std::span<const cplx> data() const { return a_; }
    std::span<cplx> data() { return a_; }

    CoeffMatrix adjoint() const;  // conjugate transpose

    CoeffMatrix& operator+=(const CoeffMatrix& o);
    CoeffMatrix& operator-=(const CoeffMatrix& o);
    CoeffMatrix& operator*=(cplx s);

    friend CoeffMatrix operator+(CoeffMatrix a, const CoeffMatrix& b) { return a += b; }
    friend CoeffMatrix operator-(CoeffMatrix a, const CoeffMatrix& b) { return a -= b; }
    friend CoeffMatrix operator*(cplx s, CoeffMatrix a) { return a *= s; }
    friend CoeffMatrix operator*(CoeffMatrix a, cplx s) { return a *= s; }

    bool operator==(const CoeffMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }

    double max_abs_entry() const;

    /// Largest singular value via power iteration on X*X with the all-ones
    /// deterministic start. Falls back to a second (+1,-1,...) start and then
    /// to a dense Jacobi eigensolve if the Rayleigh quotient stalls.
    double op_norm(double tol = 1e-12) const;

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

/// Standard matrix product; throws MismatchError on dimension mismatch.
CoeffMatrix matmul(const CoeffMatrix& x, const CoeffMatrix& y);

/// y += X * x for a d-vector slice (used by the block kernels).
void accum_matvec(const CoeffMatrix& x_mat, const cplx* x, cplx* y);
/// y += X^* * x.
void accum_matvec_adj(const CoeffMatrix& x_mat, const cplx* x, cplx* y);

/// All eigenvalues of a Hermitian matrix (row-major n x n) by cyclic complex
/// Jacobi rotations, ascending order. Library fallback path for degenerate
/// power-iteration gaps.
std::vector<double> hermitian_eigenvalues(std::vector<cplx> h, int n);

}  // namespace wka
