#pragma once

#include "pmc/current.hpp"
#include "pmc/measure.hpp"
#include "pmc/space.hpp"

namespace pmc {

/* Optimal witness of the flat norm: value = total_variation(residue) +
 * mass(filling) and residue + boundary(filling) = mu. */
struct FlatNormResult {
    double value = 0.0;
    AtomicMeasure residue;        // the part paid for by creation (A)
    PolyhedralCurrent filling;    // the 1-current whose boundary covers the rest (B)
};

/* Flat norm of a 0-current: the cheapest split mu = A + boundary(B), where
 * atoms of A cost `creation_cost` per unit weight and B costs its mass.
 *
 * Solved exactly as a transshipment problem on the support of mu plus one
 * virtual apex node: moving weight between support points costs their
 * distance, creating or absorbing it at a point costs `creation_cost` (an
 * arc to or from the apex).  The triangle inequality makes direct arcs
 * sufficient, so the optimum over this network equals the optimum over all
 * polyhedral fillings supported on the points of mu.
 *
 * For a unit dipole delta_a - delta_b this reduces to the closed form
 * min(d(a, b), 2 * creation_cost).
 */
FlatNormResult flat_norm(const AtomicMeasure& mu, SpacePtr space, double creation_cost = 1.0);

/* Flat distance between two 0-currents: flat_norm(mu - nu).  A metric on
 * atomic measures; zero exactly when mu == nu. */
double narrow_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, SpacePtr space,
                  double creation_cost = 1.0);

}  // namespace pmc
