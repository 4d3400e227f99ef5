#include "pmc/approx.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmc/flatnorm.hpp"
#include "pmc/transport.hpp"

namespace pmc {

namespace {

constexpr double kMinSpacing = 1e-9;      // refuse levels with tighter segment spacing
constexpr double kDirectionFloor = 1e-14; /* below this a direction component is treated
                                           * as exactly axis-parallel in the clip */

struct CellBox {
    double xl, xh, yl, yh;
};

/* Cell bounds computed with the same expressions grid_space uses for node
 * coordinates, so segment endpoints landing on cell walls or corners get
 * the identical bits and dedup against the grid nodes. */
CellBox cell_box(const GridCurrent& g, int i, int j) {
    const double hx = g.hx(), hy = g.hy();
    CellBox box;
    box.xl = g.rect[0] + i * hx;
    box.xh = (i + 1 == g.nx) ? g.rect[2] : g.rect[0] + (i + 1) * hx;
    box.yl = g.rect[1] + j * hy;
    box.yh = (j + 1 == g.ny) ? g.rect[3] : g.rect[1] + (j + 1) * hy;
    return box;
}

struct Segment {
    std::array<double, 2> tail;
    std::array<double, 2> head;
};

/* Chord of the box along the unit direction u at perpendicular offset
 * fraction f in (0, 1): the line {x : n.x = s_min + f * (s_max - s_min)}
 * (n the left normal of u, s the corner projections onto n) clipped to
 * the box, oriented along u.  The wall that binds each end has its
 * coordinate placed exactly, and the free coordinate snaps to a wall when
 * the chord grazes a corner, so coincident endpoints dedup bit-for-bit.
 */
Segment cell_chord(const CellBox& box, const std::array<double, 2>& u, double f) {
    const std::array<double, 2> n{-u[1], u[0]};
    const std::array<std::array<double, 2>, 4> corners{
        {{box.xl, box.yl}, {box.xh, box.yl}, {box.xl, box.yh}, {box.xh, box.yh}}};

    int lo_corner = 0, hi_corner = 0;
    double s_lo = n[0] * corners[0][0] + n[1] * corners[0][1];
    double s_hi = s_lo;
    for (int c = 1; c < 4; ++c) {
        const double s = n[0] * corners[c][0] + n[1] * corners[c][1];
        if (s < s_lo) {
            s_lo = s;
            lo_corner = c;
        }
        if (s > s_hi) {
            s_hi = s;
            hi_corner = c;
        }
    }

    /* Point of the line inside the box: the same convex combination of the
     * extreme corners that f takes between the extreme offsets. */
    const std::array<double, 2> base{
        corners[lo_corner][0] + f * (corners[hi_corner][0] - corners[lo_corner][0]),
        corners[lo_corner][1] + f * (corners[hi_corner][1] - corners[lo_corner][1])};

    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    int axis0 = -1, axis1 = -1;
    double wall0 = 0.0, wall1 = 0.0;
    auto clip = [&](int axis, double lo_bound, double hi_bound) {
        const double dir = u[axis];
        if (std::abs(dir) <= kDirectionFloor) return;  // base[axis] lies inside the slab
        double ta = (lo_bound - base[axis]) / dir;
        double tb = (hi_bound - base[axis]) / dir;
        double wa = lo_bound, wb = hi_bound;
        if (ta > tb) {
            std::swap(ta, tb);
            std::swap(wa, wb);
        }
        if (ta > t0) {
            t0 = ta;
            axis0 = axis;
            wall0 = wa;
        }
        if (tb < t1) {
            t1 = tb;
            axis1 = axis;
            wall1 = wb;
        }
    };
    clip(0, box.xl, box.xh);
    clip(1, box.yl, box.yh);
    if (axis0 < 0 || axis1 < 0 || !(t0 < t1)) {
        throw Error("polyhedralize: chord clip degenerated (malformed cell)");
    }

    auto endpoint = [&](double t, int axis, double wall) {
        std::array<double, 2> point{base[0] + t * u[0], base[1] + t * u[1]};
        point[axis] = wall;
        const int other = 1 - axis;
        const double lo = other == 0 ? box.xl : box.yl;
        const double hi = other == 0 ? box.xh : box.yh;
        const double snap = 1e-12 * (hi - lo);
        if (std::abs(point[other] - lo) <= snap) {
            point[other] = lo;
        } else if (std::abs(point[other] - hi) <= snap) {
            point[other] = hi;
        }
        return point;
    };
    return {endpoint(t0, axis0, wall0), endpoint(t1, axis1, wall1)};
}

void refuse_spacing(double spacing, int nu) {
    if (spacing < kMinSpacing) {
        std::ostringstream msg;
        msg << "polyhedralize: level " << nu << " spaces segments " << spacing
            << " apart, below the " << kMinSpacing << " floor; refusing";
        throw ValidationError(msg.str());
    }
}

}  // namespace

Polyhedralization polyhedralize(const GridCurrent& g, int nu, PolyMode mode) {
    g.validate();
    if (nu < 1 || nu > 30) {
        throw ValidationError("polyhedralize: refinement level must be in [1, 30]");
    }
    const int denom = 1 << nu;
    const int chords = denom - 1;

    /* One family of `chords` parallel segments per nonzero cell (per
     * nonzero component in component mode); refuse absurd totals before
     * allocating. */
    std::size_t families = 0;
    for (const auto& l : g.field) {
        if (mode == PolyMode::directional) {
            families += std::hypot(l[0], l[1]) > kWeightFloor ? 1 : 0;
        } else {
            families += (std::abs(l[0]) > kWeightFloor ? 1 : 0) +
                        (std::abs(l[1]) > kWeightFloor ? 1 : 0);
        }
    }
    if (static_cast<double>(families) * chords > 5e7) {
        throw ValidationError("polyhedralize: level asks for more than 5e7 segments; refusing");
    }

    EmbeddedSpace points = grid_space(g);
    std::vector<EdgeInput> edges;
    std::vector<TransportAtom> atoms;
    edges.reserve(families * chords);
    atoms.reserve(families * chords);
    const double area = g.cell_area();

    auto emit = [&](const std::array<double, 2>& tail, const std::array<double, 2>& head,
                    double segment_mass) {
        const int a = points.find_or_append(tail);
        const int b = points.find_or_append(head);
        if (a == b) throw Error("polyhedralize: segment endpoints collapsed");
        const double weight = segment_mass / points.distance(a, b);
        edges.push_back({a, b, weight});
        atoms.push_back({weight, Path({a, b})});
    };

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto& l = g.cell(i, j);
            const CellBox box = cell_box(g, i, j);
            if (mode == PolyMode::directional) {
                const double euclid = std::hypot(l[0], l[1]);
                if (euclid <= kWeightFloor) continue;
                const std::array<double, 2> u{l[0] / euclid, l[1] / euclid};
                refuse_spacing((g.hx() * std::abs(u[1]) + g.hy() * std::abs(u[0])) / denom, nu);
                /* Translated copies of one segment carry equal curve
                 * weight (the family is a uniform measure over the
                 * translates, so corner-clipped short chords matter less,
                 * exactly like the flux strips they stand for), normalized
                 * so the cell's polyhedral mass is area * ||l||_p. */
                std::vector<std::pair<int, int>> chord_ids;
                chord_ids.reserve(chords);
                double total_len = 0.0;
                for (int k = 1; k <= chords; ++k) {
                    const Segment seg = cell_chord(box, u, static_cast<double>(k) / denom);
                    const int a = points.find_or_append(seg.tail);
                    const int b = points.find_or_append(seg.head);
                    if (a == b) throw Error("polyhedralize: segment endpoints collapsed");
                    total_len += points.distance(a, b);
                    chord_ids.push_back({a, b});
                }
                const double weight = area * norm_p(l, g.p) / total_len;
                for (const auto& [a, b] : chord_ids) {
                    edges.push_back({a, b, weight});
                    atoms.push_back({weight, Path({a, b})});
                }
            } else {
                if (std::abs(l[0]) > kWeightFloor) {
                    refuse_spacing(g.hy() / denom, nu);
                    const double share = area * std::abs(l[0]) / chords;
                    for (int k = 1; k <= chords; ++k) {
                        const double y =
                            box.yl + (static_cast<double>(k) / denom) * (box.yh - box.yl);
                        const std::array<double, 2> left{box.xl, y}, right{box.xh, y};
                        if (l[0] > 0) {
                            emit(left, right, share);
                        } else {
                            emit(right, left, share);
                        }
                    }
                }
                if (std::abs(l[1]) > kWeightFloor) {
                    refuse_spacing(g.hx() / denom, nu);
                    const double share = area * std::abs(l[1]) / chords;
                    for (int k = 1; k <= chords; ++k) {
                        const double x =
                            box.xl + (static_cast<double>(k) / denom) * (box.xh - box.xl);
                        const std::array<double, 2> bottom{x, box.yl}, top{x, box.yh};
                        if (l[1] > 0) {
                            emit(bottom, top, share);
                        } else {
                            emit(top, bottom, share);
                        }
                    }
                }
            }
        }
    }

    SpacePtr space = make_space(std::move(points));
    PolyhedralCurrent current(space, edges);
    return {space, std::move(current), Transport(std::move(atoms))};
}

BoundaryCorrection boundary_correct(const PolyhedralCurrent& s, const AtomicMeasure& target) {
    for (const auto& [index, weight] : target.atoms()) {
        (void)weight;
        if (index >= s.space()->size()) {
            throw ValidationError("boundary_correct: target atom outside the current's space");
        }
    }
    const AtomicMeasure bnd = boundary(s);
    const AtomicMeasure defect = target - bnd;

    BoundaryCorrection out{PolyhedralCurrent(s.space()), s, 0.0};
    if (defect.empty()) return out;

    const double scale = std::max(1.0, total_variation(target) + total_variation(bnd));
    if (std::abs(defect.total_weight()) > kMassMatchTolerance * scale) {
        std::ostringstream msg;
        msg << "boundary_correct: target total " << target.total_weight()
            << " differs from the boundary total " << bnd.total_weight()
            << "; no 1-current can close that gap";
        throw ValidationError(msg.str());
    }

    const JordanPair parts = jordan(defect);
    if (parts.positive.empty() || parts.negative.empty()) {
        /* Balanced but one-sided: only tolerance-level residue, nothing to
         * transport. */
        return out;
    }

    /* Cheapest Y with boundary(Y) = defect: transport the missing inflow
     * from where the boundary overshoots to where it undershoots.  Plan
     * sources sit in the defect's negative part and targets in its
     * positive part, and a path puts +1 at its end, so each entry's edge
     * source -> target contributes exactly the right boundary sign. */
    const KantorovichResult kr = kantorovich(parts.negative, parts.positive, *s.space());
    std::vector<TransportAtom> flow_atoms;
    flow_atoms.reserve(kr.plan.entries().size());
    for (const auto& e : kr.plan.entries()) {
        flow_atoms.push_back({e.mass, Path({e.source, e.target})});
    }
    out.correction = synthesize(Transport(std::move(flow_atoms)), s.space());
    out.corrected = add(s, out.correction);
    out.correction_mass = mass(out.correction);
    return out;
}

std::vector<ConvergenceRow> convergence_report(const GridCurrent& g, std::span<const int> levels,
                                               PolyMode mode) {
    const double reference_mass = grid_mass(g);
    const AtomicMeasure target = grid_boundary(g);
    std::vector<ConvergenceRow> rows;
    rows.reserve(levels.size());
    for (int nu : levels) {
        const Polyhedralization p = polyhedralize(g, nu, mode);
        /* grid_boundary indices are valid in p.space: the approximation
         * space starts with the grid nodes in the same order. */
        ConvergenceRow row;
        row.nu = nu;
        row.mass_err = std::abs(mass(p.current) - reference_mass);
        row.boundary_flat_gap = narrow_gap(boundary(p.current), target, p.space);
        row.correction_mass = boundary_correct(p.current, target).correction_mass;
        rows.push_back(row);
    }
    return rows;
}

GridCurrent demo_axis_field() {
    GridCurrent g;
    g.rect = {0.0, 0.0, 1.0, 1.0};
    g.nx = 2;
    g.ny = 2;
    g.field.assign(4, {1.0, 0.0});
    g.p = NormP::two;
    return g;
}

GridCurrent demo_rotated_field() {
    GridCurrent g;
    /* 3 x 2 cells on the unit square: the cells are not square, so the
     * diagonal direction below is never a cell diagonal and no chord
     * family collapses onto the grid nodes at coarse levels. */
    g.rect = {0.0, 0.0, 1.0, 1.0};
    g.nx = 3;
    g.ny = 2;
    const double c = 1.0 / std::sqrt(2.0);
    g.field.assign(6, {c, c});
    g.p = NormP::two;
    return g;
}

}  // namespace pmc
