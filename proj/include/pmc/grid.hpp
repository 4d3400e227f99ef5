#pragma once

#include <array>
#include <vector>

#include "pmc/measure.hpp"
#include "pmc/space.hpp"

namespace pmc {

/* Planar current given by a constant 2-vector per cell of a rectangular
 * grid: the restriction of a vector field l to rect, piecewise constant on
 * an nx-by-ny array of equal cells.  `field` is row-major with x fastest:
 * cell (i, j) spans [x0 + i*hx, x0 + (i+1)*hx] x [y0 + j*hy, y0 + (j+1)*hy]
 * and holds field[j * nx + i]. */
struct GridCurrent {
    std::array<double, 4> rect{0, 0, 1, 1};  // x0, y0, x1, y1
    int nx = 1;
    int ny = 1;
    std::vector<std::array<double, 2>> field;
    NormP p = NormP::two;

    double hx() const { return (rect[2] - rect[0]) / nx; }
    double hy() const { return (rect[3] - rect[1]) / ny; }
    double cell_area() const { return hx() * hy(); }
    const std::array<double, 2>& cell(int i, int j) const {
        return field[static_cast<std::size_t>(j) * nx + i];
    }

    /* Throws ValidationError on degenerate rectangles, non-positive shapes,
     * field size mismatch, or non-finite entries. */
    void validate() const;
};

/* Integral of ||l||_p over the rectangle: sum of cell norms times cell
 * area.  Zero field gives zero. */
double grid_mass(const GridCurrent& g);

/* The (nx+1) x (ny+1) grid nodes as an embedded space; node (i, j) at
 * (x0 + i*hx, y0 + j*hy) has index j * (nx+1) + i. */
EmbeddedSpace grid_space(const GridCurrent& g);

/* Boundary of the grid current as a 0-current on the grid nodes: node
 * (i, j) receives the net flux balance of l over its dual half-cell box
 * (field extended by zero outside rect), signed so that a constant field
 * pointing from the left edge to the right edge yields positive atoms on
 * the right rim and negative on the left — matching the boundary of the
 * polyhedral currents the approximation module builds.  Interior nodes of
 * a constant field get exactly zero; the atom weights always sum to zero.
 */
AtomicMeasure grid_boundary(const GridCurrent& g);

}  // namespace pmc
