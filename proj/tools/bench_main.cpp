// Serial vs OpenMP timings for the block kernels: windowed matvec, windowed
// composition, invariant convolution, and a full power-iteration norm. Both
// paths produce bit-identical results (checked here as well); the point of
// this target is the wall-clock comparison.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "wka/block_ops.hpp"
#include "wka/exec.hpp"
#include "wka/kernel.hpp"

using namespace wka;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   identical %s\n", name,
                1e3 * serial_s, 1e3 * parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 3;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) reps = std::atoi(argv[++i]);

    std::printf("wka bench: %d worker thread(s) on the parallel path, best of %d reps\n\n", exec_threads(), reps);

    const auto g = GroupModel::parse("Z^2");
    for (const std::uint64_t radius : {8ull, 12ull, 16ull}) {
        const InvariantKernel t = random_kernel(g, 2, 2.0, 2, 7, Exec::serial);
        const WindowedKernel tw = window_kernel(t, radius);
        const std::size_t dim = tw.flat_dim();

        std::vector<cplx> x(dim), ys(dim), yp(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = cplx{1.0 + static_cast<double>(i % 7), 0.5};

        char label[64];
        std::snprintf(label, sizeof label, "matvec window=%llu (n=%zu)", static_cast<unsigned long long>(radius),
                      dim);
        const double ms = time_best_of(reps, [&] { apply_windowed(tw, x, ys, Exec::serial); });
        const double mp = time_best_of(reps, [&] { apply_windowed(tw, x, yp, Exec::parallel); });
        report(label, ms, mp, ys == yp);
    }

    {
        const InvariantKernel t = random_kernel(g, 2, 2.0, 2, 11, Exec::serial);
        const WindowedKernel a = window_kernel(t, 12);
        const WindowedKernel dense_side = compose_windowed(a, a, Exec::serial);  // denser operand
        WindowedKernel cs = dense_side, cp = dense_side;
        const double ms = time_best_of(reps, [&] { cs = compose_windowed(a, dense_side, Exec::serial); });
        const double mp = time_best_of(reps, [&] { cp = compose_windowed(a, dense_side, Exec::parallel); });
        report("compose_windowed w=12", ms, mp, cs == cp);
    }

    {
        const InvariantKernel t = random_kernel(g, 3, 2.0, 2, 13, Exec::serial);
        const InvariantKernel s = random_kernel(g, 3, 2.0, 2, 14, Exec::serial);
        InvariantKernel rs = t, rp = t;
        const double ms = time_best_of(reps, [&] { rs = compose(t, s, Exec::serial); });
        const double mp = time_best_of(reps, [&] { rp = compose(t, s, Exec::parallel); });
        report("compose invariant R=3", ms, mp, rs == rp);
    }

    {
        const InvariantKernel t = random_kernel(g, 2, 2.0, 2, 17, Exec::serial);
        const WindowedKernel tw = window_kernel(t, 14);
        double ns = 0, np = 0;
        const double ms = time_best_of(reps, [&] { ns = windowed_op_norm(tw, 1e-10, Exec::serial); });
        const double mp = time_best_of(reps, [&] { np = windowed_op_norm(tw, 1e-10, Exec::parallel); });
        report("op_norm window=14", ms, mp, ns == np);
    }

    return 0;
}
