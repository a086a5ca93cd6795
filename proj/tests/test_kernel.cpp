#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wka/dense_reference.hpp"
#include "wka/errors.hpp"
#include "wka/kernel.hpp"
#include "wka/kernel_io.hpp"
#include "wka/operator_analysis.hpp"

using namespace wka;

namespace {

GroupElement el(std::initializer_list<std::int64_t> v) { return GroupElement(std::vector<std::int64_t>(v)); }

InvariantKernel shift_kernel(const GroupPtr& g, int d = 1) {
    return delta_kernel(g, g->generators().front(), CoeffMatrix::identity(d));
}

}  // namespace

TEST_CASE("envelope: identity, diagonal coefficient, windowed supremum") {
    auto z = GroupModel::parse("Z");
    const auto ident = InvariantKernel::identity(z, 2);
    const Envelope e1 = envelope(ident);
    REQUIRE(e1.entries().size() == 1);
    CHECK(e1.entries()[0].length == 0);
    CHECK(e1.entries()[0].value == doctest::Approx(1.0));

    CoeffMatrix diag(2);
    diag.at(0, 0) = {2.0, 0.0};
    diag.at(1, 1) = {0.5, 0.0};
    const auto k = delta_kernel(z, el({1}), diag);
    const Envelope e2 = envelope(k);
    REQUIRE(e2.entries().size() == 1);
    CHECK(e2.entries()[0].value == doctest::Approx(2.0));

    // two blocks on the same diagonal with norms 3 and 5 -> sup is 5
    WindowedKernel w(z, 3, 1);
    CoeffMatrix b3(1), b5(1);
    b3.at(0, 0) = {3.0, 0.0};
    b5.at(0, 0) = {5.0, 0.0};
    // window of Z at radius 3 is ordered (0,-1,1,-2,2,-3,3); pairs (1,0) and (2,1)
    // would sit on different diagonals, so pick pairs with w_j^{-1} w_i equal.
    const auto& win = w.window();
    std::vector<WindowedKernel::Block> blocks;
    std::int32_t i1 = -1, j1 = -1, i2 = -1, j2 = -1;
    for (std::size_t i = 0; i < win.size(); ++i)
        for (std::size_t j = 0; j < win.size(); ++j) {
            if (win[i].data()[0] - win[j].data()[0] == 2) {
                if (i1 < 0) {
                    i1 = static_cast<std::int32_t>(i);
                    j1 = static_cast<std::int32_t>(j);
                } else if (i2 < 0 && static_cast<std::int32_t>(i) != i1) {
                    i2 = static_cast<std::int32_t>(i);
                    j2 = static_cast<std::int32_t>(j);
                }
            }
        }
    REQUIRE(i2 >= 0);
    blocks.push_back({i1, j1, b3});
    blocks.push_back({i2, j2, b5});
    const Envelope e3 = envelope(w.with_blocks(std::move(blocks)));
    REQUIRE(e3.entries().size() == 1);
    CHECK(e3.entries()[0].length == 2);
    CHECK(e3.entries()[0].value == doctest::Approx(5.0));
}

TEST_CASE("weighted norm: hand sums and monotonicity in a") {
    auto z = GroupModel::parse("Z");
    const auto ident = InvariantKernel::identity(z, 2);
    for (double a : {0.0, 1.0, 2.5}) CHECK(weighted_norm(ident, Weight(a)) == doctest::Approx(1.0));

    const auto single = shift_kernel(z);
    CHECK(weighted_norm(single, Weight(2.0)) == doctest::Approx(4.0));  // sqrt(1 * 2^4)

    // t(0)=1, t(+-1)=1/2, a=1: sqrt(1 + 2*(1/4)*4) = sqrt(3)
    CoeffMatrix one(1), half(1);
    one.at(0, 0) = {1.0, 0.0};
    half.at(0, 0) = {0.5, 0.0};
    auto k = add(add(delta_kernel(z, el({0}), one), delta_kernel(z, el({1}), half)),
                 delta_kernel(z, el({-1}), half));
    CHECK(weighted_norm(k, Weight(1.0)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    auto z2 = GroupModel::parse("Z^2");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto t = random_kernel(z2, 3, 2.0, 2, seed);
        double prev = weighted_norm(t, Weight(0.0));
        for (double a : {0.5, 1.0, 2.0, 3.5}) {
            const double cur = weighted_norm(t, Weight(a));
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("compose: identity, shifts, windowed-product oracle") {
    auto z = GroupModel::parse("Z");
    auto z2 = GroupModel::parse("Z^2");

    const auto s = random_kernel(z2, 2, 1.0, 2, 5);
    const auto id2 = InvariantKernel::identity(z2, 2);
    CHECK(compose(id2, s) == s);
    CHECK(compose(s, id2) == s);

    const auto d1 = shift_kernel(z);
    const auto d2 = compose(d1, d1);
    REQUIRE(d2.entries().size() == 1);
    CHECK(d2.entries()[0].gamma == el({2}));

    // dense-product oracle on B(e,12), interior B(e,7)
    const auto a = random_kernel(z2, 2, 1.0, 2, 42);
    const auto b = random_kernel(z2, 3, 1.0, 2, 43);
    const auto c = compose(a, b);
    const auto cw = compose_windowed(window_kernel(a, 12), window_kernel(b, 12));
    const auto& win = cw.window();
    double max_diff = 0.0;
    for (const auto& blk : cw.blocks()) {
        if (z2->word_length(win[blk.i]) > 7 || z2->word_length(win[blk.j]) > 7) continue;
        const auto gamma = z2->multiply(z2->inverse(win[blk.j]), win[blk.i]);
        CoeffMatrix diff = c.value_at(gamma);
        diff -= blk.value;
        max_diff = std::max(max_diff, diff.max_abs_entry());
    }
    CHECK(max_diff < 1e-10);

    CHECK_THROWS_AS(compose(d1, s), MismatchError);
}

TEST_CASE("compose matches the windowed product on a non-abelian group") {
    // On F2 the convolution formula and its mirror-image differ; the block
    // product of the sections is the ground truth.
    auto f2 = GroupModel::parse("F2");
    const auto a = random_kernel(f2, 1, 1.0, 2, 8);
    const auto b = random_kernel(f2, 1, 1.0, 2, 9);
    const auto c = compose(a, b);
    const auto cw = compose_windowed(window_kernel(a, 4), window_kernel(b, 4));
    const auto& win = cw.window();
    double max_diff = 0.0;
    std::size_t interior_blocks = 0;
    for (const auto& blk : cw.blocks()) {
        if (f2->word_length(win[blk.i]) > 2 || f2->word_length(win[blk.j]) > 2) continue;
        ++interior_blocks;
        const auto gamma = f2->multiply(f2->inverse(win[blk.j]), win[blk.i]);
        CoeffMatrix diff = c.value_at(gamma);
        diff -= blk.value;
        max_diff = std::max(max_diff, diff.max_abs_entry());
    }
    CHECK(interior_blocks > 50);
    CHECK(max_diff < 1e-12);
}

TEST_CASE("compose_windowed matches the dense triple-loop product") {
    auto z2 = GroupModel::parse("Z^2");
    const auto a = window_kernel(random_kernel(z2, 2, 1.0, 2, 11), 5);
    const auto b = window_kernel(random_kernel(z2, 2, 1.0, 2, 12), 5);
    const auto c = compose_windowed(a, b);

    const auto da = ref::dense_from_windowed(a);
    const auto db = ref::dense_from_windowed(b);
    const auto dc = ref::dense_matmul(da, db);
    const auto dcw = ref::dense_from_windowed(c);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < dc.n * dc.n; ++i) max_diff = std::max(max_diff, std::abs(dc.a[i] - dcw.a[i]));
    CHECK(max_diff < 1e-12);

    const auto id = WindowedKernel::identity(z2, 5, 2);
    CHECK(compose_windowed(id, a) == a);
    CHECK_THROWS_AS(compose_windowed(a, window_kernel(random_kernel(z2, 2, 1.0, 2, 1), 6)), MismatchError);
}

TEST_CASE("adjoint kernels") {
    auto z = GroupModel::parse("Z");
    // Hermitian invariant kernel: t(-1) = t(1)*
    CoeffMatrix m(2);
    m.at(0, 1) = {1.0, 2.0};
    m.at(1, 0) = {0.5, 0.0};
    auto herm = add(delta_kernel(z, el({1}), m), delta_kernel(z, el({-1}), m.adjoint()));
    CHECK(adjoint_kernel(herm) == herm);

    const auto d1 = shift_kernel(z);
    const auto d1adj = adjoint_kernel(d1);
    REQUIRE(d1adj.entries().size() == 1);
    CHECK(d1adj.entries()[0].gamma == el({-1}));

    auto z2 = GroupModel::parse("Z^2");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto t = random_kernel(z2, 3, 1.5, 2, seed);
        const auto tadj = adjoint_kernel(t);
        for (double a : {0.0, 1.0, 2.0, 3.0})
            CHECK(weighted_norm(t, Weight(a)) == doctest::Approx(weighted_norm(tadj, Weight(a))).epsilon(1e-10));
        CHECK(adjoint_kernel(tadj) == t);
    }

    // (TS)* = S* T*
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto t = random_kernel(z2, 2, 1.0, 2, seed);
        const auto s = random_kernel(z2, 2, 1.0, 2, seed + 1000);
        const auto lhs = adjoint_kernel(compose(t, s));
        const auto rhs = compose(adjoint_kernel(s), adjoint_kernel(t));
        REQUIRE(lhs.entries().size() == rhs.entries().size());
        for (const auto& e : lhs.entries()) {
            CoeffMatrix diff = e.value;
            diff -= rhs.value_at(e.gamma);
            CHECK(diff.max_abs_entry() < 1e-10);
        }
    }
}

TEST_CASE("truncate: fixed points, tails two ways, monotone to zero") {
    auto z = GroupModel::parse("Z");
    const auto t = random_kernel(z, 3, 1.0, 2, 9);
    CHECK(truncate(t, 5) == t);
    CHECK(truncate(t, 3) == t);
    CHECK(truncate(truncate(t, 2), 2) == truncate(t, 2));

    CoeffMatrix one(1);
    one.at(0, 0) = {1.0, 0.0};
    InvariantKernel k(z, 1);
    for (std::int64_t g = -2; g <= 2; ++g) k = add(k, delta_kernel(z, el({g}), one));
    const auto k1 = truncate(k, 1);
    CHECK(k1.propagation() == 1);
    CHECK(k1.entries().size() == 3);

    // ||T - T_n||_a two ways: envelope tail vs norm of the difference kernel
    const Weight w(1.5);
    for (std::uint64_t n = 0; n <= t.propagation(); ++n) {
        const auto tn = truncate(t, n);
        const auto diff = add(t, scale(tn, cplx{-1.0, 0.0}));
        const double direct = weighted_norm(diff, w);
        double tail_sq = 0.0;
        for (const auto& e : envelope(t).entries())
            if (e.length > n) tail_sq += e.value * e.value * std::pow(1.0 + static_cast<double>(e.length), 3.0);
        CHECK(direct == doctest::Approx(std::sqrt(tail_sq)).epsilon(1e-12));
    }

    double prev = 1e300;
    for (std::uint64_t n = 0; n <= t.propagation(); ++n) {
        const double err = weighted_norm(add(t, scale(truncate(t, n), cplx{-1.0, 0.0})), w);
        CHECK(err <= prev + 1e-12);
        prev = err;
    }
    CHECK(prev == 0.0);
}

TEST_CASE("random kernels: determinism, envelope exactness, seed extension") {
    auto z2 = GroupModel::parse("Z^2");
    const auto a = random_kernel(z2, 0, 2.0, 2, 3);
    CHECK(a.entries().size() == 1);
    CHECK(a.propagation() == 0);

    const auto t1 = random_kernel(z2, 3, 2.5, 2, 7);
    const auto t2 = random_kernel(z2, 3, 2.5, 2, 7);
    CHECK(t1 == t2);
    CHECK_FALSE(t1 == random_kernel(z2, 3, 2.5, 2, 8));

    for (const auto& e : envelope(t1).entries())
        CHECK(e.value == doctest::Approx(std::pow(1.0 + static_cast<double>(e.length), -2.5)).epsilon(1e-12));

    // enlarging R extends without changing existing entries
    const auto big = random_kernel(z2, 4, 2.5, 2, 7);
    for (const auto& e : t1.entries()) {
        CoeffMatrix diff = e.value;
        diff -= big.value_at(e.gamma);
        CHECK(diff.max_abs_entry() == 0.0);
    }
}

TEST_CASE("empirical algebra bound with the Schur constant") {
    auto z2 = GroupModel::parse("Z^2");
    const Weight w(3.0);
    const double c0 = schur_constant(*z2, w, 50);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto t = random_kernel(z2, 4, 3.0, 2, seed);
        const auto s = random_kernel(z2, 4, 3.0, 2, seed + 500);
        CHECK(weighted_norm(compose(t, s), w) <= c0 * weighted_norm(t, w) * weighted_norm(s, w) + 1e-9);
    }
}

TEST_CASE("interchange round-trip is exact") {
    auto h3 = GroupModel::parse("H3");
    const auto t = random_kernel(h3, 2, 1.3, 3, 21);
    const auto back = read_invariant_kernel(write_kernel(t));
    CHECK(back == t);

    const auto w = window_kernel(random_kernel(h3, 1, 1.0, 2, 4), 3);
    const AnyKernel any = read_kernel(write_kernel(w));
    REQUIRE(std::holds_alternative<WindowedKernel>(any));
    CHECK(std::get<WindowedKernel>(any) == w);

    CHECK_THROWS_AS(read_kernel("not json"), ValidationError);
    CHECK_THROWS_AS(read_kernel("{\"group\":\"Z^1\"}"), ValidationError);
    CHECK_THROWS_AS(read_kernel("{\"group\":\"Z^1\",\"coeff_dim\":1,\"representation\":\"spooky\",\"entries\":[]}"),
                    ValidationError);
}

TEST_CASE("kernel expression mini-language") {
    auto z = GroupModel::parse("Z");
    const auto t = parse_kernel_expr("I+0.4*shift", z, 1);
    CHECK(t.entries().size() == 2);
    CHECK(t.propagation() == 1);
    CHECK(envelope(t).entries()[1].value == doctest::Approx(0.4));

    const auto r = parse_kernel_expr("random(2,3,7)", z, 2);
    CHECK(r == random_kernel(z, 2, 3.0, 2, 7));

    const auto c = parse_kernel_expr("2*I + -1*I", z, 1);
    REQUIRE(c.entries().size() == 1);
    CHECK(c.entries()[0].value.at(0, 0) == cplx{1.0, 0.0});

    CHECK_THROWS_AS(parse_kernel_expr("", z, 1), ValidationError);
    CHECK_THROWS_AS(parse_kernel_expr("I + but", z, 1), ValidationError);
    CHECK_THROWS_AS(parse_kernel_expr("random(2,3)", z, 1), ValidationError);
    CHECK_THROWS_AS(parse_kernel_expr("0.5 I", z, 1), ValidationError);
}
