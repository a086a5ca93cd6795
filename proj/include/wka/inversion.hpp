#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wka/block_ops.hpp"
#include "wka/kernel.hpp"

namespace wka {

/// Trace of one Neumann-series inversion run.
struct InversionDiagnostics {
    double spectral_lower = 0.0;  // M, outward-rounded so M I <= T*T
    double spectral_upper = 0.0;  // N, outward-rounded so T*T <= N I
    double contraction_q = 0.0;   // ||I - 2 T*T/(M+N)||_2 estimate, < 1
    std::uint64_t iterations = 0;
    double residual_2 = 0.0;       // ||P Pinv - I||_2 on the window
    double residual_2_left = 0.0;  // ||Pinv P - I||_2
    std::map<double, std::vector<double>> weighted_norm_trace;  // a -> ||S_k||_a per partial sum
    double decay_exponent = 0.0;      // NaN when the envelope has too few diagonals
    double decay_fit_residual = 0.0;  // NaN likewise
    std::uint64_t window_radius = 0;
    double tolerance = 0.0;
};

/// Spectral bracket M I <= P <= N I of a Hermitian positive-definite section,
/// via power iteration on P and on N I - P, outward-rounded by 10*tol so the
/// bracket survives iteration error. Throws NotInvertibleError when the
/// rounded M is not positive (numerically singular section).
std::pair<double, double> spectral_bounds(const WindowedKernel& p, double tol = 1e-10, Exec ex = default_exec());

struct NeumannResult {
    WindowedKernel inverse;    // T^{-1} = (2/(M+N)) S_k T* on the window
    WindowedKernel p_inverse;  // (T*T)^{-1} = (2/(M+N)) S_k
    InversionDiagnostics diag;
};

/// Neumann-series inversion on the window B(e,R): forms P = T*T, the
/// contraction A = I - 2P/(M+N), runs the Horner partial sums
/// S_k = I + A S_{k-1} until q^{k+1}/(1-q) < tol, and assembles
/// T^{-1} = (T*T)^{-1} T*. Requires R >= 3*propagation(T).
NeumannResult neumann_inverse(const InvariantKernel& t, std::uint64_t window_radius,
                              const std::vector<Weight>& w_grid, double tol = 1e-8, Exec ex = default_exec());

struct DecayFit {
    double exponent = 0.0;  // b in envelope ~ const * (1+l)^{-b}
    double residual = 0.0;  // log-log fit residual; large for exponential decay
    std::size_t points = 0;
};

/// Log-log fit of the envelope against (1+l) over diagonals with l >= l_min,
/// skipping hard zeros. Throws InsufficientDataError below 3 usable diagonals.
DecayFit decay_fit(const WindowedKernel& k, std::uint64_t l_min);

/// Window-stability study: inversions across a growing window schedule.
struct InverseClosednessReport {
    std::vector<std::uint64_t> windows;
    /// Max abs entry difference of interior inverse blocks between consecutive
    /// windows (interior = B(e, windows[0]/2)).
    std::vector<double> interior_diffs;
    std::map<double, std::vector<double>> weighted_norms;  // a -> ||T^{-1}||_a per window
    std::vector<DecayFit> decay;                           // per window; points==0 when unavailable
    std::vector<InversionDiagnostics> diagnostics;
};

InverseClosednessReport inverse_closedness_report(const InvariantKernel& t,
                                                  const std::vector<std::uint64_t>& window_schedule,
                                                  const std::vector<Weight>& w_grid, double tol = 1e-8,
                                                  Exec ex = default_exec());

}  // namespace wka
