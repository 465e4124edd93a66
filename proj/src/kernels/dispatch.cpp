#include "magbloch/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace magbloch::kernels {

namespace {

const KernelTable scalar_table{scalar::axpy, scalar::gemm, scalar::rotate, scalar::max_abs_diff, Backend::scalar};
const KernelTable avx2_table{avx2::axpy, avx2::gemm, avx2::rotate, avx2::max_abs_diff, Backend::avx2};

const KernelTable* initial_table()
{
    const char* env = std::getenv("MAGBLOCH_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_table;
    return cpu_has_avx2() ? &avx2_table : &scalar_table;
}

std::atomic<const KernelTable*>& current()
{
    static std::atomic<const KernelTable*> t{initial_table()};
    return t;
}

} // namespace

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

const KernelTable& table_for(Backend b)
{
    if (b == Backend::avx2 && cpu_has_avx2()) return avx2_table;
    return scalar_table;
}

void select(Backend b) { current().store(&table_for(b), std::memory_order_release); }

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

} // namespace magbloch::kernels
