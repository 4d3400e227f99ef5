#pragma once

#include <span>
#include <vector>

#include "pmc/core.hpp"

namespace pmc {

/* Uncapacitated arc of a transshipment network.  Costs must be
 * nonnegative (they are distances or unit creation charges here). */
struct FlowArc {
    int tail;
    int head;
    double cost;
};

struct FlowSolution {
    std::vector<double> flow;       // per input arc, >= 0
    std::vector<double> potential;  // per node; certifies optimality
    double cost = 0.0;
};

/* Minimum-cost b-flow by successive shortest paths with node potentials.
 *
 * `excess[v] > 0` marks supply, `< 0` demand; excesses must balance to
 * zero within `mass_tol`.  Arcs are uncapacitated, so every augmentation
 * exhausts a supply, a demand, or a residual reverse arc; with nonnegative
 * costs Dijkstra with reduced costs stays valid throughout.  Deterministic:
 * ties in the priority queue break on the lower node index.
 *
 * On return the potentials satisfy reduced-cost optimality:
 *   potential[head] - potential[tail] <= cost   on every arc, with
 * equality on arcs carrying flow.  Throws ValidationError when supplies
 * and demands cannot be routed (some deficit unreachable) or do not balance.
 */
FlowSolution min_cost_flow(int node_count,
                           std::span<const FlowArc> arcs,
                           std::span<const double> excess,
                           double mass_tol = 1e-12);

}  // namespace pmc
