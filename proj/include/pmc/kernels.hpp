#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pmc {
enum class NormP;
}

/* Data-parallel inner loops, each in two variants: a plain serial reference
 * (`*_serial`) and an OpenMP version of the same loop.  The unsuffixed name
 * dispatches to OpenMP when compiled with it and the problem is large enough
 * to amortize the fork, and to the reference otherwise.
 *
 * Every kernel is a pure map: each output element depends only on its own
 * inputs, so the parallel variant produces bit-identical results to the
 * reference regardless of thread count, and callers that need a scalar
 * reduce the mapped array serially.  That keeps all library output
 * deterministic.  `pmc_bench` times the pairs against each other.
 */
namespace pmc::kernels {

/* l^p distance between two coordinate tuples of length dim. */
double point_distance(const double* a, const double* b, int dim, NormP p);

/* Cross distance matrix between two flattened point lists:
 * out[i * count_b + j] = d(a_i, b_j).  `out` must hold count_a * count_b
 * doubles. */
void cross_distances_serial(const double* a, std::size_t count_a, const double* b,
                            std::size_t count_b, int dim, NormP p, double* out);
void cross_distances(const double* a, std::size_t count_a, const double* b, std::size_t count_b,
                     int dim, NormP p, double* out);

struct TriangleViolation {
    int i, j, k;
    double lhs;  // d(i,k)
    double rhs;  // d(i,j) + d(j,k)
};

/* All ordered triples with d(i,k) > d(i,j) + d(j,k) + tol, in (i, j, k)
 * lexicographic order. */
std::vector<TriangleViolation> triangle_violations_serial(
    const std::vector<std::vector<double>>& d, double tol);
std::vector<TriangleViolation> triangle_violations(const std::vector<std::vector<double>>& d,
                                                   double tol);

/* Per-element map f(i) -> out[i], the generic carrier for embarrassingly
 * parallel fill loops (form terms per edge, fluxes per node, segments per
 * cell).  `f` must be safe to call concurrently for distinct i. */
void map_index_serial(std::size_t n, double* out, const std::function<double(std::size_t)>& f);
void map_index(std::size_t n, double* out, const std::function<double(std::size_t)>& f);

/* Serial fold used after parallel maps; fixed left-to-right order. */
double sum_serial(std::span<const double> values);

}  // namespace pmc::kernels
