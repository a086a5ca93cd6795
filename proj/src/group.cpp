#include "wka/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "wka/errors.hpp"

namespace wka {

namespace {

std::vector<std::int64_t> coords(std::initializer_list<std::int64_t> v) { return {v}; }

// Freely reduce a letter word in place (letters are +-1..+-k, 0 forbidden).
void free_reduce(std::vector<std::int64_t>& w) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (out > 0 && w[out - 1] == -w[i]) {
            --out;
        } else {
            w[out++] = w[i];
        }
    }
    w.resize(out);
}

}  // namespace

GroupModel::GroupModel(GroupKind kind, int rank) : kind_(kind), rank_(rank) {}

GroupPtr GroupModel::integer_lattice(int rank) {
    if (rank < 1) throw ValidationError("lattice rank must be >= 1");
    auto g = std::shared_ptr<GroupModel>(new GroupModel(GroupKind::integer_lattice, rank));
    g->name_ = "Z^" + std::to_string(rank);
    for (int i = 0; i < rank; ++i) {
        std::vector<std::int64_t> plus(rank, 0), minus(rank, 0);
        plus[i] = 1;
        minus[i] = -1;
        g->generators_.emplace_back(std::move(plus));
        g->generators_.emplace_back(std::move(minus));
    }
    return g;
}

GroupPtr GroupModel::heisenberg3() {
    auto g = std::shared_ptr<GroupModel>(new GroupModel(GroupKind::heisenberg3, 2));
    g->name_ = "H3";
    g->generators_.emplace_back(coords({1, 0, 0}));
    g->generators_.emplace_back(coords({-1, 0, 0}));
    g->generators_.emplace_back(coords({0, 1, 0}));
    g->generators_.emplace_back(coords({0, -1, 0}));
    return g;
}

GroupPtr GroupModel::free_group(int rank) {
    if (rank < 2) throw ValidationError("free group rank must be >= 2");
    if (rank > 26) throw ValidationError("free group rank capped at 26 (letter alphabet)");
    auto g = std::shared_ptr<GroupModel>(new GroupModel(GroupKind::free_group, rank));
    g->name_ = "F" + std::to_string(rank);
    for (int i = 1; i <= rank; ++i) {
        g->generators_.emplace_back(std::vector<std::int64_t>{i});
        g->generators_.emplace_back(std::vector<std::int64_t>{-i});
    }
    return g;
}

GroupPtr GroupModel::parse(const std::string& spec) {
    if (spec == "H3" || spec == "h3") return heisenberg3();
    if (spec == "Z" || spec == "z") return integer_lattice(1);
    auto parse_int = [&](std::string_view sv) -> int {
        int v = 0;
        auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || p != sv.data() + sv.size()) throw ValidationError("bad group spec: " + spec);
        return v;
    };
    if ((spec[0] == 'Z' || spec[0] == 'z') && spec.size() > 2 && spec[1] == '^')
        return integer_lattice(parse_int(std::string_view(spec).substr(2)));
    if ((spec[0] == 'F' || spec[0] == 'f') && spec.size() > 1)
        return free_group(parse_int(std::string_view(spec).substr(1)));
    throw ValidationError("unrecognized group spec '" + spec + "' (expected Z^<d>, H3 or F<k>)");
}

GroupElement GroupModel::identity_element() const {
    switch (kind_) {
        case GroupKind::integer_lattice: return GroupElement(std::vector<std::int64_t>(rank_, 0));
        case GroupKind::heisenberg3: return GroupElement(std::vector<std::int64_t>(3, 0));
        case GroupKind::free_group: return GroupElement(std::vector<std::int64_t>{});
    }
    return GroupElement(std::vector<std::int64_t>{});
}

bool GroupModel::is_identity(const GroupElement& g) const { return g == identity_element(); }

void GroupModel::validate(const GroupElement& g) const {
    const auto d = g.data();
    switch (kind_) {
        case GroupKind::integer_lattice:
            if (d.size() != static_cast<std::size_t>(rank_))
                throw MalformedElementError("lattice element needs " + std::to_string(rank_) + " coordinates");
            return;
        case GroupKind::heisenberg3:
            if (d.size() != 3) throw MalformedElementError("Heisenberg element needs 3 coordinates");
            return;
        case GroupKind::free_group:
            for (std::size_t i = 0; i < d.size(); ++i) {
                const std::int64_t mag = d[i] < 0 ? -d[i] : d[i];
                if (mag == 0 || mag > rank_)
                    throw MalformedElementError("free-group letter out of range");
                if (i > 0 && d[i - 1] == -d[i])
                    throw MalformedElementError("free-group word is not reduced");
            }
            return;
    }
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
    validate(a);
    validate(b);
    const auto x = a.data();
    const auto y = b.data();
    switch (kind_) {
        case GroupKind::integer_lattice: {
            std::vector<std::int64_t> r(rank_);
            for (int i = 0; i < rank_; ++i) r[i] = x[i] + y[i];
            return GroupElement(std::move(r));
        }
        case GroupKind::heisenberg3:
            return GroupElement({x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]});
        case GroupKind::free_group: {
            std::vector<std::int64_t> r(x.begin(), x.end());
            r.insert(r.end(), y.begin(), y.end());
            free_reduce(r);
            return GroupElement(std::move(r));
        }
    }
    return a;
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
    validate(a);
    const auto x = a.data();
    switch (kind_) {
        case GroupKind::integer_lattice: {
            std::vector<std::int64_t> r(rank_);
            for (int i = 0; i < rank_; ++i) r[i] = -x[i];
            return GroupElement(std::move(r));
        }
        case GroupKind::heisenberg3:
            // (x,y,z)^{-1} = (-x, -y, xy - z)
            return GroupElement({-x[0], -x[1], x[0] * x[1] - x[2]});
        case GroupKind::free_group: {
            std::vector<std::int64_t> r(x.rbegin(), x.rend());
            for (auto& v : r) v = -v;
            return GroupElement(std::move(r));
        }
    }
    return a;
}

std::uint64_t GroupModel::word_length(const GroupElement& g) const {
    validate(g);
    const auto d = g.data();
    switch (kind_) {
        case GroupKind::integer_lattice: {
            std::uint64_t s = 0;
            for (auto v : d) s += static_cast<std::uint64_t>(v < 0 ? -v : v);
            return s;
        }
        case GroupKind::free_group:
            return d.size();
        case GroupKind::heisenberg3: {
            {
                std::lock_guard<std::mutex> lock(cache_mutex_);
                auto it = cache_.dist.find(g);
                if (it != cache_.dist.end()) return it->second;
            }
            // Grow BFS layers until the element shows up.
            for (std::uint64_t r = 1;; ++r) {
                ensure_layers(r);
                std::lock_guard<std::mutex> lock(cache_mutex_);
                auto it = cache_.dist.find(g);
                if (it != cache_.dist.end()) return it->second;
                if (cache_.total >= element_budget_)
                    throw ResourceLimitError("word-length BFS exceeded the element budget of " +
                                             std::to_string(element_budget_));
            }
        }
    }
    return 0;
}

std::uint64_t GroupModel::metric(const GroupElement& g, const GroupElement& h) const {
    return word_length(multiply(inverse(h), g));
}

std::uint64_t GroupModel::closed_form_ball(std::uint64_t r) const {
    switch (kind_) {
        case GroupKind::integer_lattice: {
            // #B(e,r) in (Z^d, l1) = sum_k 2^k C(d,k) C(r,k)
            const int d = rank_;
            long double total = 0.0L;
            for (int k = 0; k <= d && static_cast<std::uint64_t>(k) <= r; ++k) {
                long double cdk = 1.0L, crk = 1.0L, p2 = 1.0L;
                for (int i = 0; i < k; ++i) {
                    cdk = cdk * (d - i) / (i + 1);
                    crk = crk * static_cast<long double>(r - i) / (i + 1);
                    p2 *= 2.0L;
                }
                total += p2 * cdk * crk;
            }
            if (total > 1.8e19L) return UINT64_MAX;
            return static_cast<std::uint64_t>(std::llroundl(total));
        }
        case GroupKind::free_group: {
            // 1 + 2k * ((2k-1)^r - 1) / (2k-2)
            const long double q = 2.0L * rank_ - 1.0L;
            long double total = 1.0L, layer = 2.0L * rank_;
            for (std::uint64_t i = 1; i <= r; ++i) {
                total += layer;
                if (total > 1e18L) return UINT64_MAX;
                layer *= q;
            }
            return static_cast<std::uint64_t>(std::llroundl(total));
        }
        case GroupKind::heisenberg3:
            return 0;  // no closed form used
    }
    return 0;
}

void GroupModel::ensure_layers(std::uint64_t r) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.layers.empty()) {
        cache_.layers.push_back({identity_element()});
        cache_.dist.emplace(identity_element(), 0);
        cache_.total = 1;
    }
    while (cache_.layers.size() <= r) {
        const std::uint64_t next_r = cache_.layers.size();
        if (const auto cf = closed_form_ball(next_r); cf > element_budget_)
            throw ResourceLimitError("ball of radius " + std::to_string(next_r) + " in " + name_ + " holds " +
                                     std::to_string(cf) + " elements, over the budget of " +
                                     std::to_string(element_budget_));
        std::vector<GroupElement> next;
        for (const auto& g : cache_.layers.back()) {
            for (const auto& s : generators_) {
                GroupElement h = multiply(g, s);
                if (cache_.dist.emplace(h, static_cast<std::uint32_t>(next_r)).second) {
                    next.push_back(std::move(h));
                    if (++cache_.total > element_budget_)
                        throw ResourceLimitError("ball enumeration in " + name_ + " exceeded the budget of " +
                                                 std::to_string(element_budget_) + " elements at radius " +
                                                 std::to_string(next_r));
                }
            }
        }
        std::sort(next.begin(), next.end());
        cache_.layers.push_back(std::move(next));
    }
}

std::vector<GroupElement> GroupModel::ball(std::uint64_t r) const {
    ensure_layers(r);
    std::vector<GroupElement> out;
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (std::uint64_t k = 0; k <= r; ++k)
        out.insert(out.end(), cache_.layers[k].begin(), cache_.layers[k].end());
    return out;
}

std::vector<std::uint64_t> GroupModel::ball_sizes(std::uint64_t r_max) const {
    ensure_layers(r_max);
    std::vector<std::uint64_t> sizes(r_max + 1);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    std::uint64_t acc = 0;
    for (std::uint64_t k = 0; k <= r_max; ++k) {
        acc += cache_.layers[k].size();
        sizes[k] = acc;
    }
    return sizes;
}

GrowthReport GroupModel::growth_analysis(std::uint64_t r_max) const {
    if (r_max < 4) throw PreconditionError("growth_analysis needs r_max >= 4");
    GrowthReport rep;
    rep.ball_sizes = ball_sizes(r_max);
    rep.radii.resize(r_max + 1);
    for (std::uint64_t r = 0; r <= r_max; ++r) rep.radii[r] = r;

    // Fit window [ceil(r_max/2), r_max]; model selection between
    // log #B ~ t*log(1+r) (polynomial) and log #B ~ b*r (exponential).
    const std::uint64_t lo = (r_max + 1) / 2;
    std::vector<double> xs_log, xs_lin, ys;
    for (std::uint64_t r = lo; r <= r_max; ++r) {
        xs_log.push_back(std::log(1.0 + static_cast<double>(r)));
        xs_lin.push_back(static_cast<double>(r));
        ys.push_back(std::log(static_cast<double>(rep.ball_sizes[r])));
    }
    const LineFit loglog = fit_line(xs_log, ys);
    const LineFit semilog = fit_line(xs_lin, ys);
    rep.degree_estimate = loglog.slope;
    rep.growth_constant = std::exp(loglog.intercept);
    rep.loglog_residual = loglog.residual_rms;
    rep.semilog_residual = semilog.residual_rms;
    rep.classified_polynomial = loglog.residual_rms < semilog.residual_rms;
    return rep;
}

std::string GroupModel::format_element(const GroupElement& g) const {
    validate(g);
    const auto d = g.data();
    switch (kind_) {
        case GroupKind::integer_lattice:
        case GroupKind::heisenberg3: {
            std::ostringstream os;
            os << '(';
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (i) os << ',';
                os << d[i];
            }
            os << ')';
            return os.str();
        }
        case GroupKind::free_group: {
            if (d.empty()) return "e";
            std::string s;
            for (auto v : d)
                s += v > 0 ? static_cast<char>('a' + v - 1) : static_cast<char>('A' - v - 1);
            return s;
        }
    }
    return {};
}

GroupElement GroupModel::parse_element(const std::string& text) const {
    switch (kind_) {
        case GroupKind::integer_lattice:
        case GroupKind::heisenberg3: {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')')
                throw MalformedElementError("expected coordinates like (1,-2): " + text);
            std::vector<std::int64_t> v;
            std::string body = text.substr(1, text.size() - 2);
            std::stringstream ss(body);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                std::int64_t x = 0;
                auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
                if (ec != std::errc{} || p != tok.data() + tok.size())
                    throw MalformedElementError("bad coordinate '" + tok + "' in " + text);
                v.push_back(x);
            }
            GroupElement g(std::move(v));
            validate(g);
            return g;
        }
        case GroupKind::free_group: {
            if (text == "e") return identity_element();
            std::vector<std::int64_t> w;
            for (char c : text) {
                if (c >= 'a' && c <= 'z')
                    w.push_back(c - 'a' + 1);
                else if (c >= 'A' && c <= 'Z')
                    w.push_back(-(c - 'A' + 1));
                else
                    throw MalformedElementError(std::string("bad letter '") + c + "' in free-group word");
            }
            free_reduce(w);
            GroupElement g(std::move(w));
            validate(g);
            return g;
        }
    }
    throw MalformedElementError("unreachable");
}

}  // namespace wka
