#pragma once

#include <span>
#include <vector>

#include "wka/exec.hpp"
#include "wka/kernel.hpp"

namespace wka {

/// y = K x on the flat window vector (|window| * d entries). Each output row
/// is owned by one thread and summed in block order, so the serial and
/// parallel paths are bit-identical.
void apply_windowed(const WindowedKernel& k, std::span<const cplx> x, std::span<cplx> y, Exec ex = default_exec());

/// Largest singular value of the section via power iteration on K*K with the
/// all-ones start (relative tolerance tol). Falls back to an alternating-sign
/// start and then to a dense Jacobi eigensolve when the Rayleigh quotient
/// stalls. Returns 0 for an empty kernel.
double windowed_op_norm(const WindowedKernel& k, double tol = 1e-10, Exec ex = default_exec());

/// Largest eigenvalue of a Hermitian positive semidefinite section (power
/// iteration directly on K; cheaper than the singular-value route).
double windowed_psd_top_eigenvalue(const WindowedKernel& k, double tol = 1e-10, Exec ex = default_exec());

}  // namespace wka
