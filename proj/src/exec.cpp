#include "wka/exec.hpp"

#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wka {

namespace {

Exec initial_exec() {
    if (const char* e = std::getenv("WKA_EXEC"); e && std::strcmp(e, "serial") == 0) return Exec::serial;
    return Exec::parallel;
}

Exec g_exec = initial_exec();

}  // namespace

Exec default_exec() { return g_exec; }

void set_default_exec(Exec e) { g_exec = e; }

int exec_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wka
