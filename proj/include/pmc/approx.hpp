#pragma once

#include <span>

#include "pmc/decompose.hpp"
#include "pmc/grid.hpp"

namespace pmc {

enum class PolyMode {
    /* Chords parallel to the cell's field vector, one per node of the
     * uniform dyadic grid across the cell's perpendicular extent. */
    directional,
    /* Split the field into axis components: horizontal segments for the
     * x-component at dyadic heights, vertical for the y-component at
     * dyadic abscissae.  Mass is the l^1 cell mass, so it exceeds the
     * grid mass unless the field is axis-aligned — the price of
     * representing a diagonal flow by staircase families. */
    component,
};

struct Polyhedralization {
    /* Grid nodes first (same indexing as grid_space), then segment
     * endpoints appended as needed, so measures on grid nodes and on the
     * approximation share one space. */
    SpacePtr space;
    PolyhedralCurrent current;
    /* The same segments as weighted two-vertex paths (the curves the cell
     * families stand for; exact in directional mode and for axis-aligned
     * fields in component mode). */
    Transport segments;
};

/* Polyhedral approximation of the grid current at refinement level nu:
 * every cell becomes N = 2^nu - 1 parallel segments through the interior
 * nodes of a uniform dyadic grid, all carrying the same curve weight (a
 * uniform measure over translated copies, like the flux strips they stand
 * for), normalized so per-cell and total masses match the grid mass at
 * every level up to roundoff — not only in the limit.  In directional
 * mode the per-cell mass is area * ||l||_p; in component mode it is
 * area * ||l||_1 per the component split.  Zero cells produce nothing.
 *
 * Refuses nu < 1 and levels so deep that the chord spacing falls under
 * 1e-9 (weights would blow up on corner-grazing chords). */
Polyhedralization polyhedralize(const GridCurrent& g, int nu, PolyMode mode = PolyMode::directional);

struct BoundaryCorrection {
    PolyhedralCurrent correction;  // Y: min-cost flow current
    PolyhedralCurrent corrected;   // input + Y
    double correction_mass = 0.0;  // mass(Y) = W1 of the boundary defect
};

/* Repairs the boundary of an approximation: finds the cheapest current Y
 * with boundary(Y) = target - boundary(s) (a Wasserstein flow from the
 * defect's negative part to its positive part along straight edges), so
 * boundary(s + Y) == target exactly up to atom cancellation.  Requires
 * target and boundary(s) to balance (both sum to zero) and live on s's
 * space. */
BoundaryCorrection boundary_correct(const PolyhedralCurrent& s, const AtomicMeasure& target);

struct ConvergenceRow {
    int nu;
    double mass_err;           // |approx mass - grid mass|
    double boundary_flat_gap;  // flat distance between the two boundaries
    double correction_mass;    // mass of the repairing flow Y
};

/* Convergence table for a grid current over the given levels: mass error
 * against the grid mass, flat-norm gap between boundary(approx) and
 * grid_boundary, and the mass of the boundary repair.  In directional
 * mode the mass error is ~0 by construction and the gap shrinks; in
 * component mode the mass error honestly records the persistent
 * ||l||_1-vs-||l||_p overshoot of the staircase families. */
std::vector<ConvergenceRow> convergence_report(const GridCurrent& g, std::span<const int> levels,
                                               PolyMode mode = PolyMode::directional);

/* Built-in demo fields used by the convergence tests and the CLI docs. */
GridCurrent demo_axis_field();     // constant (1, 0) on the unit square
GridCurrent demo_rotated_field();  // constant (1, 1)/sqrt(2), 3 x 2 cells

}  // namespace pmc
