#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wka/numerics.hpp"

namespace wka {

enum class GroupKind {
    integer_lattice,  // Z^d, generators +-e_i, word length = l1 norm
    heisenberg3,      // integer triples, (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')
    free_group,       // rank k >= 2, letters +-1..+-k, freely reduced words
};

/// Canonical element form. Interpretation is owned by the GroupModel:
/// lattice / Heisenberg store coordinates, free groups store the reduced
/// word as signed letters (+g for a generator, -g for its inverse).
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<std::int64_t> data) : data_(std::move(data)) {}

    std::span<const std::int64_t> data() const { return data_; }
    std::vector<std::int64_t>& raw() { return data_; }

    bool operator==(const GroupElement& o) const { return data_ == o.data_; }
    /// Plain lexicographic order on the canonical form (not length-aware).
    bool operator<(const GroupElement& o) const { return data_ < o.data_; }

    std::uint64_t hash() const { return hash_ints(data_); }

private:
    std::vector<std::int64_t> data_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const { return static_cast<std::size_t>(g.hash()); }
};

/// Growth classification output: ball counts, the log-log degree fit, and the
/// polynomial-vs-exponential model selection.
struct GrowthReport {
    std::vector<std::uint64_t> radii;
    std::vector<std::uint64_t> ball_sizes;
    double degree_estimate = 0.0;   // slope of log #B(e,r) vs log(1+r) on the fit window
    double growth_constant = 0.0;   // exp(intercept) of the same fit
    double loglog_residual = 0.0;
    double semilog_residual = 0.0;  // residual of log #B vs r
    bool classified_polynomial = false;
};

class GroupModel;
using GroupPtr = std::shared_ptr<const GroupModel>;

/// A finitely generated group with a symmetric generating set, word length,
/// the induced left-invariant metric and ball enumeration. Immutable after
/// construction; the internal BFS cache is an idempotent memo guarded by a
/// mutex, so const methods are safe to call concurrently.
class GroupModel : public std::enable_shared_from_this<GroupModel> {
public:
    static GroupPtr integer_lattice(int rank);
    static GroupPtr heisenberg3();
    static GroupPtr free_group(int rank);

    /// Parses "Z^<d>", "H3", "F<k>" (also plain "Z" as Z^1).
    static GroupPtr parse(const std::string& spec);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const std::vector<GroupElement>& generators() const { return generators_; }

    GroupElement identity_element() const;
    bool is_identity(const GroupElement& g) const;

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;

    /// Cayley-graph distance from the identity. Closed forms for lattices and
    /// free groups; memoized BFS for Heisenberg.
    std::uint64_t word_length(const GroupElement& g) const;

    /// d(g, h) = l(h^{-1} g); left-invariant.
    std::uint64_t metric(const GroupElement& g, const GroupElement& h) const;

    /// All elements with l(g) <= r, each once, ordered by (length, lexicographic
    /// canonical form). Throws ResourceLimitError past the element budget.
    std::vector<GroupElement> ball(std::uint64_t r) const;

    /// |B(e, r)| for r = 0..r_max (prefix sums of the BFS layers).
    std::vector<std::uint64_t> ball_sizes(std::uint64_t r_max) const;

    GrowthReport growth_analysis(std::uint64_t r_max) const;

    /// Canonical text form: "(3,-2)" for coordinates, reduced words like "abA"
    /// for free groups ("e" = identity).
    std::string format_element(const GroupElement& g) const;
    GroupElement parse_element(const std::string& text) const;

    /// Throws MalformedElementError unless g is a valid canonical element.
    void validate(const GroupElement& g) const;

    std::uint64_t element_budget() const { return element_budget_; }
    void set_element_budget(std::uint64_t b) { element_budget_ = b; }

private:
    GroupModel(GroupKind kind, int rank);

    // Grows the BFS layer cache up to radius r (idempotent, budget-capped).
    void ensure_layers(std::uint64_t r) const;
    // Closed-form |B(e,r)| where available (lattice, free group); 0 = unknown.
    std::uint64_t closed_form_ball(std::uint64_t r) const;

    GroupKind kind_;
    int rank_;
    std::string name_;
    std::vector<GroupElement> generators_;
    std::uint64_t element_budget_ = 2'000'000;

    struct LayerCache {
        std::vector<std::vector<GroupElement>> layers;  // layers[r] sorted lexicographically
        std::unordered_map<GroupElement, std::uint32_t, GroupElementHash> dist;
        std::uint64_t total = 0;
    };
    mutable LayerCache cache_;
    mutable std::mutex cache_mutex_;
};

/// Length-then-lexicographic comparator used for all deterministic orderings.
struct LengthLexLess {
    const GroupModel* group;
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        const auto la = group->word_length(a);
        const auto lb = group->word_length(b);
        if (la != lb) return la < lb;
        return a < b;
    }
};

}  // namespace wka
