// The parallel kernels own whole output rows/diagonals with a fixed per-output
// summation order, so they must match the serial reference bit for bit.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wka/block_ops.hpp"
#include "wka/inversion.hpp"
#include "wka/kernel.hpp"
#include "wka/operator_analysis.hpp"

using namespace wka;

TEST_CASE("matvec: serial and parallel are bit-identical") {
    auto z2 = GroupModel::parse("Z^2");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto k = window_kernel(random_kernel(z2, 2, 1.0, 2, seed, Exec::serial), 9);
        std::vector<cplx> x(k.flat_dim());
        SplitMix64 rng(seed * 31);
        for (auto& v : x) v = cplx{rng.uniform_sym(), rng.uniform_sym()};
        std::vector<cplx> ys(x.size()), yp(x.size());
        apply_windowed(k, x, ys, Exec::serial);
        apply_windowed(k, x, yp, Exec::parallel);
        CHECK(ys == yp);
    }
}

TEST_CASE("composition: serial and parallel are bit-identical") {
    auto z2 = GroupModel::parse("Z^2");
    const auto t = random_kernel(z2, 2, 1.0, 2, 3, Exec::serial);
    const auto t_par = random_kernel(z2, 2, 1.0, 2, 3, Exec::parallel);
    CHECK(t == t_par);  // generation itself

    const auto s = random_kernel(z2, 3, 1.5, 2, 4, Exec::serial);
    CHECK(compose(t, s, Exec::serial) == compose(t, s, Exec::parallel));

    const auto aw = window_kernel(t, 8);
    const auto bw = window_kernel(s, 8);
    CHECK(compose_windowed(aw, bw, Exec::serial) == compose_windowed(aw, bw, Exec::parallel));
    CHECK(envelope(compose_windowed(aw, bw), Exec::serial).entries().size() ==
          envelope(compose_windowed(aw, bw), Exec::parallel).entries().size());
}

TEST_CASE("norms and a full inversion: serial and parallel agree exactly") {
    auto z2 = GroupModel::parse("Z^2");
    const auto t = random_kernel(z2, 2, 2.0, 2, 9, Exec::serial);
    CHECK(windowed_op_norm(window_kernel(t, 8), 1e-10, Exec::serial) ==
          windowed_op_norm(window_kernel(t, 8), 1e-10, Exec::parallel));

    const auto base = add(InvariantKernel::identity(z2, 2), scale(t, cplx{0.15, 0.0}));
    const Exec saved = default_exec();
    set_default_exec(Exec::serial);
    const NeumannResult rs = neumann_inverse(base, 6, {Weight(1.0), Weight(2.0)}, 1e-8);
    set_default_exec(Exec::parallel);
    const NeumannResult rp = neumann_inverse(base, 6, {Weight(1.0), Weight(2.0)}, 1e-8);
    set_default_exec(saved);

    CHECK(rs.inverse == rp.inverse);
    CHECK(rs.diag.contraction_q == rp.diag.contraction_q);
    CHECK(rs.diag.iterations == rp.diag.iterations);
    CHECK(rs.diag.residual_2 == rp.diag.residual_2);
    CHECK(rs.diag.weighted_norm_trace == rp.diag.weighted_norm_trace);
}
