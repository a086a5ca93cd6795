#pragma once

#include <vector>

#include "wka/kernel.hpp"
#include "wka/numerics.hpp"

namespace wka::ref {

/// Dense complex matrix, row-major. Reference routines only: these are the
/// independent oracle path (LU factorization, Jacobi via the real symmetric
/// embedding) against which the sparse/power-iteration production code is
/// cross-checked by the tests and the suite.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<cplx> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n_) : n(n_), a(n_ * n_, cplx{}) {}

    cplx& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static DenseMatrix identity(std::size_t n);
};

/// Flat dense section of a windowed kernel (flat_dim x flat_dim).
DenseMatrix dense_from_windowed(const WindowedKernel& k);

/// Plain triple-loop product.
DenseMatrix dense_matmul(const DenseMatrix& x, const DenseMatrix& y);

DenseMatrix dense_adjoint(const DenseMatrix& x);

/// Solves A X = B by LU with partial pivoting; throws NotInvertibleError on a
/// numerically singular pivot.
DenseMatrix lu_solve(DenseMatrix a, DenseMatrix b);

DenseMatrix lu_inverse(const DenseMatrix& a);

/// All eigenvalues of a Hermitian matrix, ascending, via the real symmetric
/// embedding [[Re, -Im], [Im, Re]] and a classical real Jacobi sweep. Each
/// eigenvalue of H appears twice in the embedding; this returns the n
/// deduplicated values.
std::vector<double> hermitian_eigenvalues_embedding(const DenseMatrix& h);

/// Largest singular value from the eigenvalues of A* A (oracle route).
double sigma_max(const DenseMatrix& a);

}  // namespace wka::ref
