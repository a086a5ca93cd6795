#include "wka/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "wka/errors.hpp"

namespace wka {

namespace {

void check_same(const InvariantKernel& t, const InvariantKernel& s) {
    if (t.group()->name() != s.group()->name()) throw MismatchError("kernels live on different groups");
    if (t.coeff_dim() != s.coeff_dim()) throw MismatchError("kernel coefficient dimensions differ");
}

void check_same(const WindowedKernel& a, const WindowedKernel& b) {
    if (a.group()->name() != b.group()->name()) throw MismatchError("windowed kernels on different groups");
    if (a.coeff_dim() != b.coeff_dim()) throw MismatchError("windowed kernel coefficient dimensions differ");
    if (a.window_radius() != b.window_radius()) throw MismatchError("windowed kernels have different windows");
}

using ElementIndex = std::unordered_map<GroupElement, std::int32_t, GroupElementHash>;

ElementIndex index_of(const std::vector<GroupElement>& window) {
    ElementIndex idx;
    idx.reserve(window.size() * 2);
    for (std::size_t i = 0; i < window.size(); ++i) idx.emplace(window[i], static_cast<std::int32_t>(i));
    return idx;
}

}  // namespace

// ---- Envelope --------------------------------------------------------------

double Envelope::value_at(const GroupElement& gamma) const {
    for (const auto& e : entries_)
        if (e.gamma == gamma) return e.value;
    return 0.0;
}

double Envelope::max_length() const {
    std::uint64_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.length);
    return static_cast<double>(m);
}

// ---- InvariantKernel --------------------------------------------------------

InvariantKernel::InvariantKernel(GroupPtr group, int coeff_dim) : group_(std::move(group)), coeff_dim_(coeff_dim) {
    if (coeff_dim_ < 1) throw ValidationError("coeff_dim must be >= 1");
}

InvariantKernel::InvariantKernel(GroupPtr group, int coeff_dim, std::vector<Entry> entries)
    : group_(std::move(group)), coeff_dim_(coeff_dim), entries_(std::move(entries)) {
    if (coeff_dim_ < 1) throw ValidationError("coeff_dim must be >= 1");
    normalize();
}

void InvariantKernel::normalize() {
    std::vector<Entry> kept;
    kept.reserve(entries_.size());
    for (auto& e : entries_) {
        if (e.value.dim() != coeff_dim_) throw MismatchError("kernel entry has wrong coefficient dimension");
        if (e.value.max_abs_entry() < kSupportDropTol) continue;
        e.length = group_->word_length(e.gamma);
        kept.push_back(std::move(e));
    }
    std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.gamma < b.gamma;
    });
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i].gamma == kept[i - 1].gamma) throw ValidationError("duplicate kernel entry");
    entries_ = std::move(kept);
    propagation_ = entries_.empty() ? 0 : entries_.back().length;
}

InvariantKernel InvariantKernel::identity(GroupPtr group, int coeff_dim) {
    std::vector<Entry> e;
    e.push_back({group->identity_element(), 0, CoeffMatrix::identity(coeff_dim)});
    return InvariantKernel(std::move(group), coeff_dim, std::move(e));
}

const CoeffMatrix* InvariantKernel::find(const GroupElement& gamma) const {
    for (const auto& e : entries_)
        if (e.gamma == gamma) return &e.value;
    return nullptr;
}

CoeffMatrix InvariantKernel::value_at(const GroupElement& gamma) const {
    if (const auto* m = find(gamma)) return *m;
    return CoeffMatrix(coeff_dim_);
}

bool InvariantKernel::operator==(const InvariantKernel& o) const {
    if (group_->name() != o.group_->name() || coeff_dim_ != o.coeff_dim_ || entries_.size() != o.entries_.size())
        return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!(entries_[i].gamma == o.entries_[i].gamma) || !(entries_[i].value == o.entries_[i].value)) return false;
    return true;
}

// ---- WindowGeometry -----------------------------------------------------------

WindowGeometry::WindowGeometry(GroupPtr group, std::vector<GroupElement> elements)
    : group_(std::move(group)), elements_(std::move(elements)) {}

void WindowGeometry::ensure_table() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!table_.empty()) return;
    const auto n = elements_.size();
    std::vector<std::int32_t> table(n * n);
    std::unordered_map<GroupElement, std::int32_t, GroupElementHash> seen;
    std::vector<Diagonal> diagonals;
    for (std::size_t j = 0; j < n; ++j) {
        const GroupElement wj_inv = group_->inverse(elements_[j]);
        for (std::size_t i = 0; i < n; ++i) {
            GroupElement gamma = group_->multiply(wj_inv, elements_[i]);
            auto [it, inserted] = seen.emplace(gamma, static_cast<std::int32_t>(diagonals.size()));
            if (inserted) diagonals.push_back({std::move(gamma), 0});
            table[i * n + j] = it->second;
        }
    }
    for (auto& d : diagonals) d.length = group_->word_length(d.gamma);
    // Re-index so the diagonal list is (length, lex)-sorted.
    std::vector<std::int32_t> order(diagonals.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<std::int32_t>(k);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (diagonals[a].length != diagonals[b].length) return diagonals[a].length < diagonals[b].length;
        return diagonals[a].gamma < diagonals[b].gamma;
    });
    std::vector<std::int32_t> rank(order.size());
    std::vector<Diagonal> sorted(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        rank[order[k]] = static_cast<std::int32_t>(k);
        sorted[k] = std::move(diagonals[order[k]]);
    }
    for (auto& t : table) t = rank[t];
    diagonals_ = std::move(sorted);
    table_ = std::move(table);
}

const std::vector<WindowGeometry::Diagonal>& WindowGeometry::diagonals() const {
    ensure_table();
    return diagonals_;
}

std::int32_t WindowGeometry::diag_index(std::int32_t i, std::int32_t j) const {
    ensure_table();
    return table_[static_cast<std::size_t>(i) * elements_.size() + j];
}

std::uint64_t WindowGeometry::pair_distance(std::int32_t i, std::int32_t j) const {
    ensure_table();
    return diagonals_[table_[static_cast<std::size_t>(i) * elements_.size() + j]].length;
}

// ---- WindowedKernel ----------------------------------------------------------

WindowedKernel::WindowedKernel(GroupPtr group, std::uint64_t window_radius, int coeff_dim)
    : group_(std::move(group)), window_radius_(window_radius), coeff_dim_(coeff_dim) {
    if (coeff_dim_ < 1) throw ValidationError("coeff_dim must be >= 1");
    window_ = std::make_shared<const WindowGeometry>(group_, group_->ball(window_radius_));
    normalize();
}

WindowedKernel::WindowedKernel(GroupPtr group, std::uint64_t window_radius, int coeff_dim, std::vector<Block> blocks)
    : group_(std::move(group)), window_radius_(window_radius), coeff_dim_(coeff_dim), blocks_(std::move(blocks)) {
    if (coeff_dim_ < 1) throw ValidationError("coeff_dim must be >= 1");
    window_ = std::make_shared<const WindowGeometry>(group_, group_->ball(window_radius_));
    normalize();
}

WindowedKernel WindowedKernel::with_blocks(std::vector<Block> blocks) const {
    WindowedKernel k(*this);
    k.blocks_ = std::move(blocks);
    k.normalize();
    return k;
}

void WindowedKernel::normalize() {
    const auto n = static_cast<std::int32_t>(window_->size());
    std::vector<Block> kept;
    kept.reserve(blocks_.size());
    for (auto& b : blocks_) {
        if (b.value.dim() != coeff_dim_) throw MismatchError("windowed block has wrong coefficient dimension");
        if (b.i < 0 || b.i >= n || b.j < 0 || b.j >= n)
            throw ValidationError("windowed block index outside the window");
        if (b.value.max_abs_entry() < kSupportDropTol) continue;
        kept.push_back(std::move(b));
    }
    std::sort(kept.begin(), kept.end(), [](const Block& a, const Block& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i].i == kept[i - 1].i && kept[i].j == kept[i - 1].j)
            throw ValidationError("duplicate windowed block");
    blocks_ = std::move(kept);
    row_ptr_.assign(window_->size() + 1, 0);
    for (const auto& b : blocks_) ++row_ptr_[static_cast<std::size_t>(b.i) + 1];
    for (std::size_t i = 1; i < row_ptr_.size(); ++i) row_ptr_[i] += row_ptr_[i - 1];

    const std::size_t dd = static_cast<std::size_t>(coeff_dim_) * coeff_dim_;
    flat_cols_.resize(blocks_.size());
    flat_values_.resize(blocks_.size() * dd);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        flat_cols_[k] = blocks_[k].j;
        std::copy_n(blocks_[k].value.data().begin(), dd, flat_values_.begin() + k * dd);
    }
}

WindowedKernel WindowedKernel::identity(GroupPtr group, std::uint64_t window_radius, int coeff_dim) {
    WindowedKernel k(std::move(group), window_radius, coeff_dim);
    std::vector<Block> blocks;
    const auto n = static_cast<std::int32_t>(k.window_size());
    blocks.reserve(n);
    for (std::int32_t i = 0; i < n; ++i) blocks.push_back({i, i, CoeffMatrix::identity(coeff_dim)});
    return k.with_blocks(std::move(blocks));
}

const CoeffMatrix* WindowedKernel::find(std::int32_t i, std::int32_t j) const {
    if (i < 0 || static_cast<std::size_t>(i) >= window_->size()) return nullptr;
    for (std::size_t k = row_begin(i); k < row_end(i); ++k)
        if (blocks_[k].j == j) return &blocks_[k].value;
    return nullptr;
}

std::uint64_t WindowedKernel::propagation() const {
    std::uint64_t p = 0;
    for (const auto& b : blocks_) p = std::max(p, window_->pair_distance(b.i, b.j));
    return p;
}

WindowedKernel& WindowedKernel::operator+=(const WindowedKernel& o) {
    check_same(*this, o);
    std::vector<Block> merged;
    merged.reserve(blocks_.size() + o.blocks_.size());
    std::size_t a = 0, b = 0;
    while (a < blocks_.size() || b < o.blocks_.size()) {
        const bool take_a =
            b >= o.blocks_.size() ||
            (a < blocks_.size() && (blocks_[a].i < o.blocks_[b].i ||
                                    (blocks_[a].i == o.blocks_[b].i && blocks_[a].j < o.blocks_[b].j)));
        const bool equal = a < blocks_.size() && b < o.blocks_.size() && blocks_[a].i == o.blocks_[b].i &&
                           blocks_[a].j == o.blocks_[b].j;
        if (equal) {
            Block blk = blocks_[a++];
            blk.value += o.blocks_[b++].value;
            merged.push_back(std::move(blk));
        } else if (take_a) {
            merged.push_back(blocks_[a++]);
        } else {
            merged.push_back(o.blocks_[b++]);
        }
    }
    blocks_ = std::move(merged);
    normalize();
    return *this;
}

WindowedKernel& WindowedKernel::operator-=(const WindowedKernel& o) {
    WindowedKernel neg = o;
    neg *= cplx{-1.0, 0.0};
    return *this += neg;
}

WindowedKernel& WindowedKernel::operator*=(cplx s) {
    for (auto& b : blocks_) b.value *= s;
    normalize();
    return *this;
}

bool WindowedKernel::operator==(const WindowedKernel& o) const {
    if (group_->name() != o.group_->name() || coeff_dim_ != o.coeff_dim_ || window_radius_ != o.window_radius_ ||
        blocks_.size() != o.blocks_.size())
        return false;
    for (std::size_t k = 0; k < blocks_.size(); ++k)
        if (blocks_[k].i != o.blocks_[k].i || blocks_[k].j != o.blocks_[k].j ||
            !(blocks_[k].value == o.blocks_[k].value))
            return false;
    return true;
}

// ---- envelope / weighted norm ------------------------------------------------

Envelope envelope(const InvariantKernel& t, Exec ex) {
    const auto& entries = t.entries();
    std::vector<Envelope::Entry> out(entries.size());
    const auto n = static_cast<std::int64_t>(entries.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == Exec::parallel && n > 64)
#endif
    for (std::int64_t k = 0; k < n; ++k) {
        out[k] = {entries[k].gamma, entries[k].length, entries[k].value.op_norm()};
    }
    (void)ex;
    std::vector<Envelope::Entry> kept;
    kept.reserve(out.size());
    for (auto& e : out)
        if (e.value > 0.0) kept.push_back(std::move(e));
    return Envelope(std::move(kept));
}

Envelope envelope(const WindowedKernel& t, Exec ex) {
    const auto& blocks = t.blocks();
    const auto& geo = t.geometry();
    const auto& diagonals = geo.diagonals();
    const auto n = static_cast<std::int64_t>(blocks.size());
    // Per-block norms in parallel, then a max-fold per diagonal (max is
    // order-independent, so the fold stays deterministic).
    std::vector<double> norms(blocks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == Exec::parallel && n > 256)
#endif
    for (std::int64_t k = 0; k < n; ++k) norms[k] = blocks[k].value.op_norm();
    (void)ex;
    std::vector<double> per_diag(diagonals.size(), 0.0);
    for (std::int64_t k = 0; k < n; ++k) {
        const auto d = geo.diag_index(blocks[k].i, blocks[k].j);
        per_diag[d] = std::max(per_diag[d], norms[k]);
    }
    std::vector<Envelope::Entry> acc;
    for (std::size_t d = 0; d < per_diag.size(); ++d)
        if (per_diag[d] > 0.0) acc.push_back({diagonals[d].gamma, diagonals[d].length, per_diag[d]});
    return Envelope(std::move(acc));  // diagonal order is already (length, lex)
}

double weighted_norm(const Envelope& env, const Weight& w) {
    double s = 0.0;
    for (const auto& e : env.entries()) {
        const double u = w.at_length(e.length);
        s += e.value * e.value * u * u;
    }
    return std::sqrt(s);
}

double weighted_norm(const InvariantKernel& t, const Weight& w) { return weighted_norm(envelope(t), w); }
double weighted_norm(const WindowedKernel& t, const Weight& w) { return weighted_norm(envelope(t), w); }

// ---- compose -----------------------------------------------------------------

InvariantKernel compose(const InvariantKernel& t, const InvariantKernel& s, Exec ex) {
    check_same(t, s);
    const auto& group = *t.group();

    std::unordered_map<GroupElement, const CoeffMatrix*, GroupElementHash> s_lookup;
    s_lookup.reserve(s.entries().size() * 2);
    for (const auto& e : s.entries()) s_lookup.emplace(e.gamma, &e.value);

    // Output support candidates: gamma = beta * alpha over supp(S) x supp(T).
    std::unordered_map<GroupElement, std::uint64_t, GroupElementHash> support;
    for (const auto& eb : s.entries())
        for (const auto& ea : t.entries()) {
            GroupElement gamma = group.multiply(eb.gamma, ea.gamma);
            if (!support.count(gamma)) {
                const auto len = group.word_length(gamma);
                support.emplace(std::move(gamma), len);
            }
        }
    std::vector<std::pair<GroupElement, std::uint64_t>> cand(support.begin(), support.end());
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });

    std::vector<InvariantKernel::Entry> out(cand.size());
    const auto n = static_cast<std::int64_t>(cand.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == Exec::parallel && n > 8)
#endif
    for (std::int64_t k = 0; k < n; ++k) {
        const GroupElement& gamma = cand[k].first;
        CoeffMatrix acc(t.coeff_dim());
        // (t*s)(gamma) = sum_alpha t(alpha) * s(gamma alpha^{-1}), alpha in support order.
        for (const auto& ea : t.entries()) {
            const GroupElement rest = group.multiply(gamma, group.inverse(ea.gamma));
            if (auto it = s_lookup.find(rest); it != s_lookup.end()) acc += matmul(ea.value, *it->second);
        }
        out[k] = {gamma, cand[k].second, std::move(acc)};
    }
    (void)ex;
    return InvariantKernel(t.group(), t.coeff_dim(), std::move(out));
}

WindowedKernel compose_windowed(const WindowedKernel& a, const WindowedKernel& b, Exec ex) {
    check_same(a, b);
    const auto n = a.window_size();
    const int d = a.coeff_dim();
    std::vector<std::vector<WindowedKernel::Block>> rows(n);

#ifdef _OPENMP
#pragma omp parallel if (ex == Exec::parallel && n > 4)
#endif
    {
        std::vector<cplx> acc(n * static_cast<std::size_t>(d) * d);
        std::vector<std::int32_t> touched;
        std::vector<char> is_touched(n, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            touched.clear();
            // C(i,:) = sum_k A(i,k) B(k,:), k ascending, then j ascending within row k.
            for (std::size_t ak = a.row_begin(i); ak < a.row_end(i); ++ak) {
                const auto& ablk = a.blocks()[ak];
                const int k = ablk.j;
                const cplx* pa = ablk.value.data().data();
                for (std::size_t bk = b.row_begin(k); bk < b.row_end(k); ++bk) {
                    const auto& bblk = b.blocks()[bk];
                    const int j = bblk.j;
                    if (!is_touched[j]) {
                        is_touched[j] = 1;
                        touched.push_back(j);
                        std::fill_n(acc.begin() + static_cast<std::size_t>(j) * d * d, d * d, cplx{});
                    }
                    cplx* cj = acc.data() + static_cast<std::size_t>(j) * d * d;
                    const cplx* pb = bblk.value.data().data();
                    if (d == 2) {
                        cj[0] += pa[0] * pb[0] + pa[1] * pb[2];
                        cj[1] += pa[0] * pb[1] + pa[1] * pb[3];
                        cj[2] += pa[2] * pb[0] + pa[3] * pb[2];
                        cj[3] += pa[2] * pb[1] + pa[3] * pb[3];
                    } else if (d == 1) {
                        cj[0] += pa[0] * pb[0];
                    } else {
                        for (int r = 0; r < d; ++r)
                            for (int m = 0; m < d; ++m) {
                                const cplx arm = pa[r * d + m];
                                if (arm == cplx{}) continue;
                                for (int c = 0; c < d; ++c) cj[r * d + c] += arm * pb[m * d + c];
                            }
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& out = rows[i];
            out.reserve(touched.size());
            for (const auto j : touched) {
                CoeffMatrix m(d);
                std::copy_n(acc.begin() + static_cast<std::size_t>(j) * d * d, d * d, m.data().begin());
                out.push_back({static_cast<std::int32_t>(i), j, std::move(m)});
                is_touched[j] = 0;
            }
        }
    }
    (void)ex;
    std::vector<WindowedKernel::Block> blocks;
    std::size_t total = 0;
    for (const auto& r : rows) total += r.size();
    blocks.reserve(total);
    for (auto& r : rows)
        for (auto& blk : r) blocks.push_back(std::move(blk));
    return a.with_blocks(std::move(blocks));
}

// ---- adjoint / truncate --------------------------------------------------------

InvariantKernel adjoint_kernel(const InvariantKernel& t) {
    const auto& group = *t.group();
    std::vector<InvariantKernel::Entry> out;
    out.reserve(t.entries().size());
    for (const auto& e : t.entries())
        out.push_back({group.inverse(e.gamma), e.length, e.value.adjoint()});
    return InvariantKernel(t.group(), t.coeff_dim(), std::move(out));
}

WindowedKernel adjoint_kernel(const WindowedKernel& t) {
    std::vector<WindowedKernel::Block> out;
    out.reserve(t.blocks().size());
    for (const auto& b : t.blocks()) out.push_back({b.j, b.i, b.value.adjoint()});
    return t.with_blocks(std::move(out));
}

InvariantKernel truncate(const InvariantKernel& t, std::uint64_t n) {
    std::vector<InvariantKernel::Entry> out;
    for (const auto& e : t.entries())
        if (e.length <= n) out.push_back(e);
    return InvariantKernel(t.group(), t.coeff_dim(), std::move(out));
}

WindowedKernel truncate(const WindowedKernel& t, std::uint64_t n) {
    const auto& geo = t.geometry();
    std::vector<WindowedKernel::Block> out;
    for (const auto& b : t.blocks())
        if (geo.pair_distance(b.i, b.j) <= n) out.push_back(b);
    return t.with_blocks(std::move(out));
}

// ---- generators -----------------------------------------------------------------

InvariantKernel random_kernel(GroupPtr group, std::uint64_t radius, double s, int coeff_dim, std::uint64_t seed,
                              Exec ex) {
    if (s < 0.0) throw ValidationError("random_kernel decay exponent must be >= 0");
    const auto support = group->ball(radius);
    std::vector<InvariantKernel::Entry> out(support.size());
    const auto n = static_cast<std::int64_t>(support.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == Exec::parallel && n > 16)
#endif
    for (std::int64_t k = 0; k < n; ++k) {
        const GroupElement& gamma = support[k];
        SplitMix64 rng(hash_ints(gamma.data(), seed));
        CoeffMatrix m(coeff_dim);
        for (int i = 0; i < coeff_dim; ++i)
            for (int j = 0; j < coeff_dim; ++j) {
                const double re = rng.uniform_sym();
                const double im = rng.uniform_sym();
                m.at(i, j) = cplx{re, im};
            }
        const double nm = m.op_norm();
        if (nm == 0.0)
            m = CoeffMatrix::identity(coeff_dim);
        else
            m *= cplx{1.0 / nm, 0.0};
        const auto len = group->word_length(gamma);
        m *= cplx{std::pow(1.0 + static_cast<double>(len), -s), 0.0};
        out[k] = {gamma, len, std::move(m)};
    }
    (void)ex;
    return InvariantKernel(std::move(group), coeff_dim, std::move(out));
}

WindowedKernel window_kernel(const InvariantKernel& t, std::uint64_t window_radius) {
    WindowedKernel shell(t.group(), window_radius, t.coeff_dim());
    const auto& window = shell.window();
    const auto idx = index_of(window);
    const auto& group = *t.group();
    std::vector<WindowedKernel::Block> blocks;
    for (std::size_t i = 0; i < window.size(); ++i) {
        for (const auto& e : t.entries()) {
            // block (i, j) = t(gamma) iff w_j = w_i * gamma^{-1}
            const GroupElement wj = group.multiply(window[i], group.inverse(e.gamma));
            if (auto it = idx.find(wj); it != idx.end())
                blocks.push_back({static_cast<std::int32_t>(i), it->second, e.value});
        }
    }
    return shell.with_blocks(std::move(blocks));
}

InvariantKernel delta_kernel(GroupPtr group, const GroupElement& g, const CoeffMatrix& value) {
    std::vector<InvariantKernel::Entry> e;
    e.push_back({g, 0, value});
    return InvariantKernel(std::move(group), value.dim(), std::move(e));
}

InvariantKernel scale(const InvariantKernel& t, cplx s) {
    std::vector<InvariantKernel::Entry> out = t.entries();
    for (auto& e : out) e.value *= s;
    return InvariantKernel(t.group(), t.coeff_dim(), std::move(out));
}

InvariantKernel add(const InvariantKernel& t, const InvariantKernel& s) {
    check_same(t, s);
    std::vector<InvariantKernel::Entry> out = t.entries();
    for (const auto& e : s.entries()) {
        bool found = false;
        for (auto& o : out)
            if (o.gamma == e.gamma) {
                o.value += e.value;
                found = true;
                break;
            }
        if (!found) out.push_back(e);
    }
    return InvariantKernel(t.group(), t.coeff_dim(), std::move(out));
}

}  // namespace wka
