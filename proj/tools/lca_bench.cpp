// Benchmark harness: the serial reference kernels against their OpenMP
// counterparts, with a result-equality check per kernel.
//
//   lca-bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "lca/dynamics.hpp"
#include "lca/measure.hpp"

#if defined(_OPENMP)
#include <omp.h>
#else
static int omp_get_max_threads() { return 1; }
#endif

using namespace lca;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   results %s\n",
                kernel, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                equal ? "equal" : "DIFFER");
}

void bench_apply_cyclic(bool quick) {
    const Modulus m = factorize(4);
    const LocalRule f(m, 1, {2, 2, 1});
    const std::size_t size = quick ? (1u << 16) : (1u << 22);
    const int rounds = quick ? 4 : 16;
    std::mt19937_64 rng(1);
    std::vector<Residue> cells(size);
    for (auto& c : cells)
        c = rng() % 4;

    std::vector<Residue> out_serial, out_parallel, scratch;
    const auto serial_start = std::chrono::steady_clock::now();
    scratch = cells;
    for (int t = 0; t < rounds; ++t) {
        kernels::apply_cyclic_serial(f, scratch, out_serial);
        std::swap(scratch, out_serial);
    }
    out_serial = scratch;
    const double serial_ms = ms_since(serial_start);

    const auto parallel_start = std::chrono::steady_clock::now();
    scratch = cells;
    for (int t = 0; t < rounds; ++t) {
        kernels::apply_cyclic_parallel(f, scratch, out_parallel);
        std::swap(scratch, out_parallel);
    }
    out_parallel = scratch;
    const double parallel_ms = ms_since(parallel_start);

    report("apply_cyclic", serial_ms, parallel_ms, out_serial == out_parallel);
}

void bench_preimage(bool quick) {
    // a right-permutative width-4 rule over Z_4 against a long cylinder:
    // brute enumeration of 4^(len+3) candidates
    const Modulus m = factorize(4);
    const LocalRule f(m, 0, {2, 1, 2, 3});
    Cylinder c;
    c.start = 0;
    c.symbols.assign(quick ? 5 : 8, 1);
    EnumOptions opts;
    opts.guard = std::uint64_t{1} << 26;

    const auto serial_start = std::chrono::steady_clock::now();
    const auto serial = kernels::preimage_brute_serial(f, c, opts);
    const double serial_ms = ms_since(serial_start);

    const auto parallel_start = std::chrono::steady_clock::now();
    const auto parallel = kernels::preimage_brute_parallel(f, c, opts);
    const double parallel_ms = ms_since(parallel_start);

    report("preimage_brute", serial_ms, parallel_ms, serial == parallel);
}

void bench_epsilon(bool quick) {
    // pullbacks of a coordinate partition through the rule and its inverse;
    // the full size joins two inverse pullbacks and walks 4^11 assignments
    const Modulus m = factorize(4);
    const LocalRule f(m, 1, {2, 2, 1});
    const LocalRule g = inverse_rule(f);
    EnumOptions opts;
    opts.guard = std::uint64_t{1} << 26;
    const Partition xi = coordinate_partition(quick ? 0 : 1, m, opts);
    const Partition past = pullback_partition(f, xi, 1, opts);
    Partition future = pullback_partition(g, xi, 1, opts);
    if (!quick)
        future = join_partitions(future, pullback_partition(g, xi, 2, opts), opts);
    const BernoulliVector uniform = BernoulliVector::uniform(4);

    const auto serial_start = std::chrono::steady_clock::now();
    const Rational serial = kernels::epsilon_independence_serial(past, future, uniform, opts);
    const double serial_ms = ms_since(serial_start);

    const auto parallel_start = std::chrono::steady_clock::now();
    const Rational parallel =
        kernels::epsilon_independence_parallel(past, future, uniform, opts);
    const double parallel_ms = ms_since(parallel_start);

    report("epsilon_independence", serial_ms, parallel_ms, serial == parallel);
}

} // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else {
            std::fprintf(stderr, "usage: %s [--quick]\n", argv[0]);
            return 2;
        }
    }
    std::printf("threads: %d%s\n", omp_get_max_threads(), quick ? " (quick sizes)" : "");
    bench_apply_cyclic(quick);
    bench_preimage(quick);
    bench_epsilon(quick);
    return 0;
}
