#pragma once

#include <vector>

#include "pmc/decompose.hpp"
#include "pmc/space.hpp"

namespace pmc {

/* Distance between two polygonal curves in the same embedded space, as
 * points of curve space: the discrete Frechet distance (minimum over
 * monotone traversals of the maximum pointwise gap) after both curves are
 * densified to at least `samples_per_unit` points per unit of length, so
 * long edges cannot hide a wide gap between the polylines.  Symmetric,
 * nonnegative, zero for identical curves; constant curves are single
 * points.  Invariant under traversal speed by construction, but NOT under
 * reversal — curves are oriented. */
double theta_distance(const Path& a, const Path& b, const EmbeddedSpace& space,
                      double samples_per_unit = 64.0);

/* One refinement level of the shrinking-coil study. */
struct SpiralRow {
    int nu;                 // winding count of the coil
    int segments;           // polygonal resolution used (64 per winding)
    double weight;          // transport weight carried by the single curve
    double eta_mass;        // total weight of the curve family (= weight)
    double boundary_tv;     // total variation of the synthesized boundary
    double form_error;      // panel gap vs the limit circle (see below)
    double theta_gap;       // curve distance to the limit circle's polygon
};

/* The shrinking-coil convergence study.  Level nu is one curve winding nu
 * times around the unit circle while its radius grows from 1 to 1 + 1/nu,
 * sampled with 64 points per winding and carried with weight 1/nu, so the
 * synthesized currents have uniformly bounded mass while the family's
 * total weight and boundary shrink like 1/nu.
 *
 * Reported per level:
 *   - eta_mass = 1/nu (the family is a single atom),
 *   - boundary_tv = 2/nu exactly (one start atom + one end atom),
 *   - form_error: the largest gap over a fixed panel of affine test forms
 *     between the coil current's action and the limit action — nu laps
 *     near the unit circle at weight 1/nu act like one lap at weight 1,
 *     so the reference is a fine regular polygon on the unit circle
 *     carrying weight 1 (4096 sides; on affine forms it is within about
 *     1e-6 of the smooth circle, far below the coil's own gap),
 *   - theta_gap: theta_distance between the coil and that reference
 *     polygon.  It stays near the diameter 2 at every level: some point
 *     of the coil always faces any monotone partner on the opposite side.
 *
 * The contrast is the point of the study: form_error decreases strictly
 * over doubling levels (4, 8, 16, 32) because the coil's radial drift
 * 1/nu halves with each doubling — the currents converge — while
 * theta_gap stays bounded away from zero — the curves do not.
 */
std::vector<SpiralRow> spiral_suite(const std::vector<int>& levels = {4, 8, 16, 32});

}  // namespace pmc
