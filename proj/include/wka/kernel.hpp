#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wka/complexmat.hpp"
#include "wka/exec.hpp"
#include "wka/group.hpp"
#include "wka/weight.hpp"

namespace wka {

/// Entries with coefficient norm below this are dropped on construction so
/// that supports stay tight and propagation stays meaningful.
inline constexpr double kSupportDropTol = 1e-30;

/// Scalar shadow of a kernel: gamma -> sup of coefficient norms on the
/// gamma-th diagonal. All weighted norms factor through this.
class Envelope {
public:
    struct Entry {
        GroupElement gamma;
        std::uint64_t length = 0;
        double value = 0.0;
    };

    Envelope() = default;
    explicit Envelope(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Value at gamma (0 when absent); linear scan, fine at toolkit scale.
    double value_at(const GroupElement& gamma) const;

    double max_length() const;

private:
    std::vector<Entry> entries_;  // sorted by (length, lex), values > 0
};

/// Left-invariant kernel: finitely supported map gamma -> t(gamma) meaning
/// t(g1, g2) = t(g2^{-1} g1). Exact infinite-group semantics with finite data.
class InvariantKernel {
public:
    struct Entry {
        GroupElement gamma;
        std::uint64_t length = 0;
        CoeffMatrix value;
    };

    InvariantKernel(GroupPtr group, int coeff_dim);
    InvariantKernel(GroupPtr group, int coeff_dim, std::vector<Entry> entries);

    static InvariantKernel identity(GroupPtr group, int coeff_dim);

    const GroupPtr& group() const { return group_; }
    int coeff_dim() const { return coeff_dim_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::uint64_t propagation() const { return propagation_; }

    /// t(gamma); zero matrix when gamma is outside the support.
    CoeffMatrix value_at(const GroupElement& gamma) const;
    const CoeffMatrix* find(const GroupElement& gamma) const;

    bool operator==(const InvariantKernel& o) const;

private:
    void normalize();  // sort by (length, lex), drop tiny entries, set propagation

    GroupPtr group_;
    int coeff_dim_;
    std::vector<Entry> entries_;
    std::uint64_t propagation_ = 0;
};

/// Window B(e,R) plus a lazily built diagonal table: for each index pair the
/// diagonal gamma = w_j^{-1} w_i and its length. Shared by every kernel
/// derived from the same window so envelope extraction and truncation avoid
/// repeating group arithmetic.
class WindowGeometry {
public:
    struct Diagonal {
        GroupElement gamma;
        std::uint64_t length = 0;
    };

    WindowGeometry(GroupPtr group, std::vector<GroupElement> elements);

    const GroupPtr& group() const { return group_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    /// Diagonals sorted by (length, lex); index space for diag_index.
    const std::vector<Diagonal>& diagonals() const;
    std::int32_t diag_index(std::int32_t i, std::int32_t j) const;
    std::uint64_t pair_distance(std::int32_t i, std::int32_t j) const;

private:
    void ensure_table() const;

    GroupPtr group_;
    std::vector<GroupElement> elements_;
    mutable std::mutex mutex_;
    mutable std::vector<Diagonal> diagonals_;
    mutable std::vector<std::int32_t> table_;  // n*n -> diagonal index
};

/// Finite-section kernel on a window B(e, R): sparse block matrix indexed by
/// the deterministic window order. Blocks are stored CSR-style, sorted by
/// (row, col), with row offsets for the data-parallel kernels.
class WindowedKernel {
public:
    struct Block {
        std::int32_t i;
        std::int32_t j;
        CoeffMatrix value;
    };

    WindowedKernel(GroupPtr group, std::uint64_t window_radius, int coeff_dim);
    WindowedKernel(GroupPtr group, std::uint64_t window_radius, int coeff_dim, std::vector<Block> blocks);

    static WindowedKernel identity(GroupPtr group, std::uint64_t window_radius, int coeff_dim);

    const GroupPtr& group() const { return group_; }
    int coeff_dim() const { return coeff_dim_; }
    std::uint64_t window_radius() const { return window_radius_; }
    const WindowGeometry& geometry() const { return *window_; }
    const std::vector<GroupElement>& window() const { return window_->elements(); }
    std::size_t window_size() const { return window_->size(); }
    /// Flat dimension of the section as an operator: |window| * coeff_dim.
    std::size_t flat_dim() const { return window_->size() * static_cast<std::size_t>(coeff_dim_); }

    const std::vector<Block>& blocks() const { return blocks_; }
    /// Half-open block range [row_begin(i), row_end(i)) of row i.
    std::size_t row_begin(std::size_t i) const { return row_ptr_[i]; }
    std::size_t row_end(std::size_t i) const { return row_ptr_[i + 1]; }

    /// Flat copies of the block data for the hot matvec loop: column index and
    /// d*d row-major values per block, in block order.
    const std::int32_t* flat_cols() const { return flat_cols_.data(); }
    const cplx* flat_values() const { return flat_values_.data(); }

    const CoeffMatrix* find(std::int32_t i, std::int32_t j) const;

    /// Same group/window/dim, new block list (shares the window storage).
    WindowedKernel with_blocks(std::vector<Block> blocks) const;

    /// Max d(w_i, w_j) over stored blocks (<= 2R by construction).
    std::uint64_t propagation() const;

    WindowedKernel& operator+=(const WindowedKernel& o);
    WindowedKernel& operator-=(const WindowedKernel& o);
    WindowedKernel& operator*=(cplx s);
    friend WindowedKernel operator+(WindowedKernel a, const WindowedKernel& b) { return a += b; }
    friend WindowedKernel operator-(WindowedKernel a, const WindowedKernel& b) { return a -= b; }
    friend WindowedKernel operator*(cplx s, WindowedKernel a) { return a *= s; }

    bool operator==(const WindowedKernel& o) const;

private:
    void normalize();

    GroupPtr group_;
    std::uint64_t window_radius_;
    int coeff_dim_;
    std::shared_ptr<const WindowGeometry> window_;  // ball(R) + diagonal table, shared across copies
    std::vector<Block> blocks_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::int32_t> flat_cols_;
    std::vector<cplx> flat_values_;
};

// ---- kernel algebra operations ------------------------------------------

Envelope envelope(const InvariantKernel& t, Exec ex = default_exec());
Envelope envelope(const WindowedKernel& t, Exec ex = default_exec());

/// ||T||_a = sqrt( sum_gamma envelope(gamma)^2 (1+l(gamma))^{2a} ).
double weighted_norm(const Envelope& env, const Weight& w);
double weighted_norm(const InvariantKernel& t, const Weight& w);
double weighted_norm(const WindowedKernel& t, const Weight& w);

/// Convolution product (t*s)(gamma) = sum_alpha t(alpha) s(alpha^{-1} gamma).
InvariantKernel compose(const InvariantKernel& t, const InvariantKernel& s, Exec ex = default_exec());

/// Block-matrix product over the shared window. Equals the restriction of the
/// infinite composition only on the window interior (boundary truncation).
WindowedKernel compose_windowed(const WindowedKernel& a, const WindowedKernel& b, Exec ex = default_exec());

InvariantKernel adjoint_kernel(const InvariantKernel& t);
WindowedKernel adjoint_kernel(const WindowedKernel& t);

/// Zeroes every entry with d(g1, g2) > n.
InvariantKernel truncate(const InvariantKernel& t, std::uint64_t n);
WindowedKernel truncate(const WindowedKernel& t, std::uint64_t n);

/// Deterministic pseudo-random invariant kernel: support B(e,R), each entry
/// (1+l)^{-s} times a unit-norm matrix drawn from a stream seeded by
/// (seed, canonical form), so the envelope is exactly (1+l)^{-s}.
InvariantKernel random_kernel(GroupPtr group, std::uint64_t radius, double s, int coeff_dim, std::uint64_t seed,
                              Exec ex = default_exec());

/// Finite section of an invariant kernel on B(e, R):
/// block (i,j) = t(w_j^{-1} w_i) wherever that lies in the support.
WindowedKernel window_kernel(const InvariantKernel& t, std::uint64_t window_radius);

/// delta_g kernel: coefficient `value` placed on the g-th diagonal.
InvariantKernel delta_kernel(GroupPtr group, const GroupElement& g, const CoeffMatrix& value);

/// Scalar multiple of an invariant kernel.
InvariantKernel scale(const InvariantKernel& t, cplx s);
/// Pointwise sum (same group, same coeff_dim).
InvariantKernel add(const InvariantKernel& t, const InvariantKernel& s);

}  // namespace wka
