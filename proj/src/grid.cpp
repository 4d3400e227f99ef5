#include "pmc/grid.hpp"

#include <cmath>
#include <sstream>

#include "pmc/kernels.hpp"

namespace pmc {

void GridCurrent::validate() const {
    if (nx < 1 || ny < 1) throw ValidationError("grid: shape must be positive in both axes");
    if (!(rect[2] > rect[0]) || !(rect[3] > rect[1])) {
        throw ValidationError("grid: rectangle must have positive width and height");
    }
    for (double c : rect) {
        if (!std::isfinite(c)) throw ValidationError("grid: non-finite rectangle corner");
    }
    if (field.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
        std::ostringstream msg;
        msg << "grid: field has " << field.size() << " cells, shape wants "
            << static_cast<std::size_t>(nx) * ny;
        throw ValidationError(msg.str());
    }
    for (const auto& l : field) {
        if (!std::isfinite(l[0]) || !std::isfinite(l[1])) {
            throw ValidationError("grid: non-finite field entry");
        }
    }
}

double grid_mass(const GridCurrent& g) {
    g.validate();
    const double area = g.cell_area();
    std::vector<double> terms(g.field.size());
    kernels::map_index(g.field.size(), terms.data(), [&](std::size_t c) {
        return area * norm_p(g.field[c], g.p);
    });
    return kernels::sum_serial(terms);
}

EmbeddedSpace grid_space(const GridCurrent& g) {
    g.validate();
    EmbeddedSpace space(2, g.p);
    const double hx = g.hx(), hy = g.hy();
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            /* Exact corner coordinates at the rim avoid drift when other
             * constructions (segment endpoints) land on the same corners. */
            const double x = (i == g.nx) ? g.rect[2] : g.rect[0] + i * hx;
            const double y = (j == g.ny) ? g.rect[3] : g.rect[1] + j * hy;
            space.append_point(std::array<double, 2>{x, y});
        }
    }
    return space;
}

AtomicMeasure grid_boundary(const GridCurrent& g) {
    g.validate();
    const double hx = g.hx(), hy = g.hy();
    const int nodes_x = g.nx + 1;
    const std::size_t node_count = static_cast<std::size_t>(nodes_x) * (g.ny + 1);

    /* Component of the field, zero outside the grid. */
    auto lx = [&](int i, int j) -> double {
        if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) return 0.0;
        return g.cell(i, j)[0];
    };
    auto ly = [&](int i, int j) -> double {
        if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) return 0.0;
        return g.cell(i, j)[1];
    };

    /* Flux balance over the dual box of node (i, j): faces at half-cell
     * offsets, each face split by the grid line through the node into two
     * halves lying in different cells.  The sign is chosen so the result
     * is the boundary of the transport the field describes: mass leaves
     * the node region where the field points away, so the node is a
     * source there (negative boundary weight), and dually for sinks. */
    std::vector<double> flux(node_count);
    kernels::map_index(node_count, flux.data(), [&](std::size_t n) {
        const int i = static_cast<int>(n) % nodes_x;
        const int j = static_cast<int>(n) / nodes_x;
        const double east = lx(i, j - 1) + lx(i, j);
        const double west = lx(i - 1, j - 1) + lx(i - 1, j);
        const double north = ly(i - 1, j) + ly(i, j);
        const double south = ly(i - 1, j - 1) + ly(i, j - 1);
        return 0.5 * hy * (west - east) + 0.5 * hx * (south - north);
    });

    AtomicMeasure mu;
    for (std::size_t n = 0; n < node_count; ++n) {
        if (std::abs(flux[n]) > kWeightFloor) mu.add(static_cast<int>(n), flux[n]);
    }
    return mu;
}

}  // namespace pmc
