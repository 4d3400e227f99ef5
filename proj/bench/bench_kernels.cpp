/* pmc_bench: times each parallel kernel against its serial reference and
 * checks that the two produce bit-identical output.
 *
 * Usage: pmc_bench [--quick]
 *   --quick  small sizes, suitable as a smoke test under ctest
 *
 * Speedups near 1.0 simply mean few cores (or no OpenMP); the interesting
 * column for correctness is `identical`, which must always be yes.
 */
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "pmc/kernels.hpp"
#include "pmc/space.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double best_of(int repeats, const std::function<void()>& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = clock_type::now();
        body();
        const std::chrono::duration<double, std::milli> took = clock_type::now() - start;
        best = std::min(best, took.count());
    }
    return best;
}

void print_row(const char* name, std::size_t n, double serial_ms, double parallel_ms,
               bool identical) {
    std::printf("%-22s %12zu %12.3f %12.3f %9.2fx %10s\n", name, n, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "yes" : "NO");
}

bool bench_cross_distances(bool quick) {
    const std::size_t na = quick ? 120 : 1500;
    const std::size_t nb = quick ? 110 : 1400;
    const int dim = 2;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::vector<double> a(na * dim), b(nb * dim);
    for (double& x : a) x = coord(rng);
    for (double& x : b) x = coord(rng);
    std::vector<double> out_serial(na * nb), out_parallel(na * nb);

    const double serial_ms = best_of(3, [&] {
        pmc::kernels::cross_distances_serial(a.data(), na, b.data(), nb, dim, pmc::NormP::two,
                                             out_serial.data());
    });
    const double parallel_ms = best_of(3, [&] {
        pmc::kernels::cross_distances(a.data(), na, b.data(), nb, dim, pmc::NormP::two,
                                      out_parallel.data());
    });
    const bool identical =
        std::memcmp(out_serial.data(), out_parallel.data(), na * nb * sizeof(double)) == 0;
    print_row("cross_distances", na * nb, serial_ms, parallel_ms, identical);
    return identical;
}

bool bench_triangle_violations(bool quick) {
    const std::size_t n = quick ? 60 : 220;
    /* Random symmetric "distances" with zero diagonal; not a metric, so
     * plenty of violations get collected and compared. */
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
    }

    std::vector<pmc::kernels::TriangleViolation> vs, vp;
    const double serial_ms =
        best_of(3, [&] { vs = pmc::kernels::triangle_violations_serial(d, 1e-12); });
    const double parallel_ms = best_of(3, [&] { vp = pmc::kernels::triangle_violations(d, 1e-12); });

    bool identical = vs.size() == vp.size();
    for (std::size_t i = 0; identical && i < vs.size(); ++i) {
        identical = vs[i].i == vp[i].i && vs[i].j == vp[i].j && vs[i].k == vp[i].k &&
                    vs[i].lhs == vp[i].lhs && vs[i].rhs == vp[i].rhs;
    }
    print_row("triangle_violations", n * n * n, serial_ms, parallel_ms, identical);
    return identical;
}

bool bench_map_index(bool quick) {
    const std::size_t n = quick ? 100000 : 4000000;
    std::vector<double> out_serial(n), out_parallel(n);
    const auto f = [](std::size_t i) {
        const double x = 1e-6 * static_cast<double>(i);
        return std::sqrt(x * x + 1.0) - x;
    };
    const double serial_ms =
        best_of(3, [&] { pmc::kernels::map_index_serial(n, out_serial.data(), f); });
    const double parallel_ms =
        best_of(3, [&] { pmc::kernels::map_index(n, out_parallel.data(), f); });
    const bool identical =
        std::memcmp(out_serial.data(), out_parallel.data(), n * sizeof(double)) == 0;
    print_row("map_index", n, serial_ms, parallel_ms, identical);
    return identical;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else {
            std::fprintf(stderr, "usage: %s [--quick]\n", argv[0]);
            return 1;
        }
    }

    std::printf("%-22s %12s %12s %12s %10s %10s\n", "kernel", "elements", "serial ms",
                "parallel ms", "speedup", "identical");
    bool ok = true;
    ok &= bench_cross_distances(quick);
    ok &= bench_triangle_violations(quick);
    ok &= bench_map_index(quick);
    if (!ok) {
        std::fprintf(stderr, "FAIL: a parallel kernel diverged from its serial reference\n");
        return 1;
    }
    return 0;
}
