#pragma once

namespace wka {

/// Execution policy for the data-parallel block kernels. Both paths produce
/// bit-identical results: parallel loops own whole output rows/diagonals, so
/// every floating-point sum runs in the same order either way.
enum class Exec {
    serial,
    parallel,
};

/// Process-wide default (initialized from WKA_EXEC=serial|parallel, else parallel).
Exec default_exec();
void set_default_exec(Exec e);

/// Number of worker threads the parallel policy would use (1 without OpenMP).
int exec_threads();

}  // namespace wka
