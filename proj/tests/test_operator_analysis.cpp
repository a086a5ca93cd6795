#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wka/dense_reference.hpp"
#include "wka/errors.hpp"
#include "wka/operator_analysis.hpp"

using namespace wka;

namespace {

GroupElement el(std::initializer_list<std::int64_t> v) { return GroupElement(std::vector<std::int64_t>(v)); }

InvariantKernel shift_kernel(const GroupPtr& g) {
    return delta_kernel(g, g->generators().front(), CoeffMatrix::identity(1));
}

}  // namespace

TEST_CASE("op_norm_2: multiplication operator, shift, discrete Laplacian") {
    auto z = GroupModel::parse("Z");

    CoeffMatrix diag(2);
    diag.at(0, 0) = {3.0, 0.0};
    diag.at(1, 1) = {1.0, 0.0};
    const auto mult = delta_kernel(z, el({0}), diag);
    for (std::uint64_t r : {0ull, 5ull, 15ull}) CHECK(op_norm_2(mult, r) == doctest::Approx(3.0).epsilon(1e-9));

    const auto s = shift_kernel(z);
    const double ns = op_norm_2(s, 20);
    CHECK(ns >= 0.98);
    CHECK(ns <= 1.0 + 1e-12);
    CHECK(ns == doctest::Approx(ref::sigma_max(ref::dense_from_windowed(window_kernel(s, 20)))).epsilon(1e-8));

    const auto lap = add(s, adjoint_kernel(s));
    const double nl = op_norm_2(lap, 40);
    CHECK(nl >= 1.99);
    CHECK(nl <= 2.0);
    // dense oracle and the known section spectrum 2 cos(pi/82)
    CHECK(nl == doctest::Approx(ref::sigma_max(ref::dense_from_windowed(window_kernel(lap, 40)))).epsilon(1e-7));
    CHECK(nl == doctest::Approx(2.0 * std::cos(M_PI / 82.0)).epsilon(1e-7));

    CHECK_THROWS_AS(op_norm_2(lap, 0), PreconditionError);
}

TEST_CASE("op_norm_2 on the Heisenberg group matches the dense oracle") {
    auto h3 = GroupModel::parse("H3");
    CHECK(op_norm_2(InvariantKernel::identity(h3, 2), 3) == doctest::Approx(1.0).epsilon(1e-9));

    const auto t = random_kernel(h3, 1, 1.0, 2, 13);
    const double got = op_norm_2(t, 3);
    CHECK(got == doctest::Approx(ref::sigma_max(ref::dense_from_windowed(window_kernel(t, 3)))).epsilon(1e-7));
}

TEST_CASE("op_norm_2 is non-decreasing in the window radius") {
    auto z2 = GroupModel::parse("Z^2");
    const auto t = random_kernel(z2, 3, 1.0, 2, 77);
    double prev = 0.0;
    for (std::uint64_t r : {3ull, 5ull, 8ull, 11ull}) {
        const double cur = op_norm_2(t, r);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("schur_constant: oracle values, convergence gate, preconditions") {
    auto z = GroupModel::parse("Z");
    auto z2 = GroupModel::parse("Z^2");
    auto f2 = GroupModel::parse("F2");

    // Z with a=2: the fitted tail is ~1e-4 of the partial sum at r_max=50, so
    // the 1e-6 gate rejects; at r_max=800 it passes and matches the
    // direct-summation oracle sqrt(2 zeta(3) + zeta(4)) = 1.86720...
    CHECK_THROWS_AS(schur_constant(*z, Weight(2.0), 50), NonConvergenceError);
    const double c0z = schur_constant(*z, Weight(2.0), 800);
    CHECK(c0z == doctest::Approx(oracle::schur_constant_direct_z(2.0)).epsilon(1e-5));
    CHECK(c0z == doctest::Approx(1.86720).epsilon(1e-4));

    const auto sc = schur_constant_detail(*z2, Weight(3.0), 50);
    CHECK(sc.c0 == doctest::Approx(oracle::schur_constant_direct_z2(3.0)).epsilon(1e-5));
    CHECK(sc.tail_bound < 1e-6 * sc.partial_sum);
    // doubling r_max moves the constant by < 1e-6 relative
    const double c0_100 = schur_constant(*z2, Weight(3.0), 100);
    CHECK(std::abs(c0_100 - sc.c0) / sc.c0 < 1e-6);

    CHECK_THROWS_AS(schur_constant(*f2, Weight(3.0), 50), GrowthPreconditionError);
    // 2a = 4 is not > degree + 2 (~4.03) on Z^2
    CHECK_THROWS_AS(schur_constant(*z2, Weight(2.0), 50), DecayPreconditionError);
}

TEST_CASE("check_schur_bound: identity, random kernels, Laplacian") {
    auto z2 = GroupModel::parse("Z^2");
    const auto id = InvariantKernel::identity(z2, 2);
    const NormReport rep = check_schur_bound(id, Weight(3.0), 6);
    CHECK(rep.norm_2_estimate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.schur_satisfied);
    CHECK(rep.weighted_norms.at(3.0) == doctest::Approx(1.0));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto t = random_kernel(z2, 4, 4.0, 2, seed);
        const NormReport r = check_schur_bound(t, Weight(3.0), 12);
        CHECK(r.schur_satisfied);
        // trace is non-decreasing
        for (std::size_t i = 1; i < r.convergence_trace.size(); ++i)
            CHECK(r.convergence_trace[i].second >= r.convergence_trace[i - 1].second - 1e-9);
    }

    auto z = GroupModel::parse("Z");
    const auto lap = add(shift_kernel(z), adjoint_kernel(shift_kernel(z)));
    const NormReport r = check_schur_bound(lap, Weight(2.0), 40, 800);
    CHECK(r.schur_satisfied);
    CHECK(r.norm_2_estimate == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(r.schur_constant * r.weighted_norms.at(2.0) ==
          doctest::Approx(oracle::schur_constant_direct_z(2.0) * std::sqrt(32.0)).epsilon(1e-4));
}

TEST_CASE("truncation_error: hand values and tail structure") {
    auto z = GroupModel::parse("Z");
    CoeffMatrix one(1);
    one.at(0, 0) = {1.0, 0.0};
    InvariantKernel t(z, 1);
    for (std::int64_t g = -2; g <= 2; ++g) t = add(t, delta_kernel(z, el({g}), one));

    // a=1, r=1, n=1: two elements at l=2 -> exact = sqrt(2 * 9) = sqrt(18);
    // bound = (2+1)^{-1} ||T||_2 with ||T||_2^2 = 1 + 2*16 + 2*81 = 195
    const auto te = truncation_error(t, Weight(1.0), 1.0, 1);
    CHECK(te.exact == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));
    CHECK(te.bound == doctest::Approx(std::sqrt(195.0) / 3.0).epsilon(1e-12));
    CHECK(te.exact <= te.bound);

    const auto past = truncation_error(t, Weight(1.0), 1.0, t.propagation());
    CHECK(past.exact == 0.0);
    CHECK(past.bound >= 0.0);

    auto z2 = GroupModel::parse("Z^2");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto k = random_kernel(z2, 4, 4.0, 2, seed);
        double prev_exact = 1e300, prev_bound = 1e300;
        for (std::uint64_t n = 0; n <= k.propagation(); ++n) {
            const auto e = truncation_error(k, Weight(1.0), 2.0, n);
            CHECK(e.exact <= e.bound);
            CHECK(e.exact <= prev_exact + 1e-12);
            CHECK(e.bound <= prev_bound + 1e-12);
            prev_exact = e.exact;
            prev_bound = e.bound;
        }
        CHECK(prev_exact == 0.0);
    }

    CHECK_THROWS_AS(truncation_error(t, Weight(1.0), 0.0, 1), PreconditionError);
}

TEST_CASE("power_norm_experiment: scalar, shift, preconditions") {
    auto z = GroupModel::parse("Z");

    const auto half = scale(InvariantKernel::identity(z, 1), cplx{0.5, 0.0});
    const PowerNormFit f1 = power_norm_experiment(half, Weight(2.0), 8, 4);
    for (std::size_t k = 1; k <= f1.power_norms.size(); ++k)
        CHECK(f1.power_norms[k - 1] == doctest::Approx(std::pow(0.5, static_cast<double>(k))).epsilon(1e-12));
    CHECK(f1.alpha == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f1.residual < 1e-10);

    const auto s = shift_kernel(z);
    const PowerNormFit f2 = power_norm_experiment(s, Weight(1.0), 10, 12);
    for (std::size_t k = 1; k <= f2.power_norms.size(); ++k)
        CHECK(f2.power_norms[k - 1] == doctest::Approx(1.0 + static_cast<double>(k)).epsilon(1e-12));
    // sub-exponential: the log excess over k log||T||_2 grows slower than linearly
    const double last_step = std::log(f2.power_norms[9] / f2.power_norms[8]) - std::log(f2.norm_2);
    CHECK(last_step < 0.2);

    CHECK_THROWS_AS(power_norm_experiment(s, Weight(1.0), 2, 12), PreconditionError);
}
