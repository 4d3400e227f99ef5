#include "pmc/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "pmc/current.hpp"
#include "pmc/kernels.hpp"

namespace pmc {

namespace {

/* Flattened sample points of a polyline, at least `spu` per unit length
 * on every edge (plus the original vertices), so the pointwise gaps seen
 * by the Frechet recurrence cannot miss a wide stretch between vertices.
 */
std::vector<double> densify(const Path& path, const EmbeddedSpace& space, double spu) {
    const int dim = space.dimension();
    std::vector<double> pts;
    const auto first = space.point(path.vertices.front());
    pts.insert(pts.end(), first.begin(), first.end());
    for (std::size_t e = 0; e + 1 < path.vertices.size(); ++e) {
        const auto a = space.point(path.vertices[e]);
        const auto b = space.point(path.vertices[e + 1]);
        const double len = space.distance(path.vertices[e], path.vertices[e + 1]);
        const double want = std::ceil(len * spu);
        if (want > 1e6) {
            throw ValidationError("theta_distance: densification asks for over 1e6 samples on one edge");
        }
        const int pieces = std::max(1, static_cast<int>(want));
        for (int s = 1; s <= pieces; ++s) {
            const double t = static_cast<double>(s) / pieces;
            for (int k = 0; k < dim; ++k) pts.push_back(a[k] + t * (b[k] - a[k]));
        }
    }
    return pts;
}

}  // namespace

double theta_distance(const Path& a, const Path& b, const EmbeddedSpace& space,
                      double samples_per_unit) {
    if (!(samples_per_unit > 0)) {
        throw ValidationError("theta_distance: samples_per_unit must be positive");
    }
    for (int v : a.vertices) {
        if (v >= space.size()) throw ValidationError("theta_distance: path vertex outside space");
    }
    for (int v : b.vertices) {
        if (v >= space.size()) throw ValidationError("theta_distance: path vertex outside space");
    }

    const int dim = space.dimension();
    const std::vector<double> pa = densify(a, space, samples_per_unit);
    const std::vector<double> pb = densify(b, space, samples_per_unit);
    const std::size_t na = pa.size() / dim;
    const std::size_t nb = pb.size() / dim;
    if (static_cast<double>(na) * static_cast<double>(nb) > 2e8) {
        throw ValidationError("theta_distance: densified pair needs over 2e8 distance entries");
    }

    /* Parallel part: the full cross-distance matrix.  Serial part: the
     * max-min dynamic program over it, two rolling rows. */
    std::vector<double> d(na * nb);
    kernels::cross_distances(pa.data(), na, pb.data(), nb, dim, space.norm(), d.data());

    std::vector<double> prev(nb), curr(nb);
    for (std::size_t j = 0; j < nb; ++j) {
        prev[j] = std::max(d[j], j == 0 ? 0.0 : prev[j - 1]);
    }
    for (std::size_t i = 1; i < na; ++i) {
        const double* row = d.data() + i * nb;
        curr[0] = std::max(row[0], prev[0]);
        for (std::size_t j = 1; j < nb; ++j) {
            const double best = std::min({prev[j], curr[j - 1], prev[j - 1]});
            curr[j] = std::max(row[j], best);
        }
        std::swap(prev, curr);
    }
    return prev[nb - 1];
}

std::vector<SpiralRow> spiral_suite(const std::vector<int>& levels) {
    constexpr int kSamplesPerWinding = 64;
    constexpr int kReferenceSides = 4096;
    constexpr double tau = 2.0 * std::numbers::pi;

    std::vector<SpiralRow> rows;
    rows.reserve(levels.size());
    for (int nu : levels) {
        if (nu < 1) throw ValidationError("spiral_suite: winding count must be >= 1");
        if (nu > 4096) throw ValidationError("spiral_suite: winding count above 4096; refusing");

        EmbeddedSpace points(2, NormP::two);

        /* The coil: radius 1 + t/nu while the angle sweeps nu full turns. */
        const int segments = kSamplesPerWinding * nu;
        std::vector<int> coil;
        coil.reserve(segments + 1);
        for (int m = 0; m <= segments; ++m) {
            const double t = static_cast<double>(m) / segments;
            const double r = 1.0 + t / nu;
            const double ang = tau * nu * t;
            const std::array<double, 2> pt{r * std::cos(ang), r * std::sin(ang)};
            coil.push_back(points.find_or_append(pt));
        }
        const Path coil_path(coil);

        /* The limit as a current: one unit-weight lap of a fine regular
         * polygon on the unit circle (closed path, zero boundary). */
        std::vector<int> ring;
        ring.reserve(kReferenceSides + 1);
        for (int m = 0; m < kReferenceSides; ++m) {
            const double ang = tau * m / kReferenceSides;
            const std::array<double, 2> pt{std::cos(ang), std::sin(ang)};
            ring.push_back(points.find_or_append(pt));
        }
        ring.push_back(ring.front());
        const Path ring_path(ring);

        const SpacePtr space = make_space(std::move(points));
        const double weight = 1.0 / nu;
        const PolyhedralCurrent coil_current = path_current(coil_path, weight, space);
        const PolyhedralCurrent ring_current = path_current(ring_path, 1.0, space);
        const Transport eta({{weight, coil_path}});

        const std::array<Form, 6> panel{
            make_affine_form({0, 0}, 1.0, {1, 0}, 0.0, NormP::two),     // dx
            make_affine_form({0, 0}, 1.0, {0, 1}, 0.0, NormP::two),     // dy
            make_affine_form({1, 0}, 0.0, {0, 1}, 0.0, NormP::two),     // x dy
            make_affine_form({0, 1}, 0.0, {1, 0}, 0.0, NormP::two),     // y dx
            make_affine_form({1, 1}, 0.0, {1, -1}, 0.0, NormP::two),    // (x+y) d(x-y)
            make_affine_form({0.5, -1}, 0.25, {2, 1}, -0.5, NormP::two),
        };
        double form_error = 0.0;
        for (const Form& form : panel) {
            form_error = std::max(
                form_error, std::abs(evaluate(coil_current, form) - evaluate(ring_current, form)));
        }

        SpiralRow row;
        row.nu = nu;
        row.segments = segments;
        row.weight = weight;
        row.eta_mass = eta.total_weight();
        row.boundary_tv = total_variation(boundary(coil_current));
        row.form_error = form_error;
        row.theta_gap = theta_distance(coil_path, ring_path, space->embedded());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pmc
