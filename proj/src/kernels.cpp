#include "pmc/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "pmc/space.hpp"

namespace pmc::kernels {

namespace {

/* Work below these sizes is cheaper than a parallel region. */
constexpr std::size_t kMinParallelElements = 1 << 12;

bool openmp_enabled() {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

}  // namespace

double point_distance(const double* a, const double* b, int dim, NormP p) {
    switch (p) {
        case NormP::one: {
            double s = 0;
            for (int c = 0; c < dim; ++c) s += std::abs(a[c] - b[c]);
            return s;
        }
        case NormP::two: {
            double s = 0;
            for (int c = 0; c < dim; ++c) {
                const double d = a[c] - b[c];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case NormP::inf: {
            double m = 0;
            for (int c = 0; c < dim; ++c) m = std::max(m, std::abs(a[c] - b[c]));
            return m;
        }
    }
    return 0.0;
}

void cross_distances_serial(const double* a, std::size_t count_a, const double* b,
                            std::size_t count_b, int dim, NormP p, double* out) {
    for (std::size_t i = 0; i < count_a; ++i) {
        const double* pa = a + i * static_cast<std::size_t>(dim);
        double* row = out + i * count_b;
        for (std::size_t j = 0; j < count_b; ++j) {
            row[j] = point_distance(pa, b + j * static_cast<std::size_t>(dim), dim, p);
        }
    }
}

void cross_distances(const double* a, std::size_t count_a, const double* b, std::size_t count_b,
                     int dim, NormP p, double* out) {
    if (!openmp_enabled() || count_a * count_b < kMinParallelElements) {
        cross_distances_serial(a, count_a, b, count_b, dim, p, out);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count_a); ++i) {
        const double* pa = a + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim);
        double* row = out + static_cast<std::size_t>(i) * count_b;
        for (std::size_t j = 0; j < count_b; ++j) {
            row[j] = point_distance(pa, b + j * static_cast<std::size_t>(dim), dim, p);
        }
    }
#endif
}

std::vector<TriangleViolation> triangle_violations_serial(
    const std::vector<std::vector<double>>& d, double tol) {
    const int n = static_cast<int>(d.size());
    std::vector<TriangleViolation> out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double lhs = d[i][k];
                const double rhs = d[i][j] + d[j][k];
                if (lhs > rhs + tol) out.push_back({i, j, k, lhs, rhs});
            }
        }
    }
    return out;
}

std::vector<TriangleViolation> triangle_violations(const std::vector<std::vector<double>>& d,
                                                   double tol) {
    const std::size_t n = d.size();
    if (!openmp_enabled() || n * n * n < kMinParallelElements) {
        return triangle_violations_serial(d, tol);
    }
    /* Bucket per leading index keeps the merged order identical to the
     * serial scan. */
    std::vector<std::vector<TriangleViolation>> buckets(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        auto& bucket = buckets[static_cast<std::size_t>(i)];
        const int ni = static_cast<int>(n);
        for (int j = 0; j < ni; ++j) {
            for (int k = 0; k < ni; ++k) {
                const double lhs = d[static_cast<std::size_t>(i)][k];
                const double rhs = d[static_cast<std::size_t>(i)][j] + d[j][k];
                if (lhs > rhs + tol) bucket.push_back({static_cast<int>(i), j, k, lhs, rhs});
            }
        }
    }
#endif
    std::vector<TriangleViolation> out;
    for (auto& bucket : buckets) out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

void map_index_serial(std::size_t n, double* out, const std::function<double(std::size_t)>& f) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

void map_index(std::size_t n, double* out, const std::function<double(std::size_t)>& f) {
    if (!openmp_enabled() || n < kMinParallelElements) {
        map_index_serial(n, out, f);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        out[i] = f(static_cast<std::size_t>(i));
    }
#endif
}

double sum_serial(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

}  // namespace pmc::kernels
