#include "pmc/flatnorm.hpp"

#include <cmath>
#include <vector>

#include "pmc/mincostflow.hpp"

namespace pmc {

FlatNormResult flat_norm(const AtomicMeasure& mu, SpacePtr space, double creation_cost) {
    if (!space) throw ValidationError("flat norm: null space handle");
    if (!(creation_cost > 0.0) || !std::isfinite(creation_cost)) {
        throw ValidationError("flat norm: creation cost must be positive and finite");
    }
    const int space_size = space->size();
    for (const auto& [index, weight] : mu.atoms()) {
        if (index >= space_size) {
            throw ValidationError("flat norm: measure atom outside the space");
        }
    }

    FlatNormResult result{0.0, {}, PolyhedralCurrent(space)};
    if (mu.empty()) return result;

    /* Nodes 0..n-1 are the support atoms, node n the apex.  The apex picks
     * up the imbalance: a positive atom routed to the apex is created
     * weight (charged to A), apex-to-negative likewise. */
    std::vector<int> support;
    std::vector<double> excess;
    support.reserve(mu.atoms().size());
    for (const auto& [index, weight] : mu.atoms()) {
        support.push_back(index);
        excess.push_back(weight);
    }
    const int n = static_cast<int>(support.size());
    const int apex = n;
    excess.push_back(-mu.total_weight());

    std::vector<FlowArc> arcs;
    arcs.reserve(static_cast<std::size_t>(n) * (n - 1) + 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            arcs.push_back({i, j, space->distance(support[i], support[j])});
        }
    }
    for (int i = 0; i < n; ++i) {
        arcs.push_back({i, apex, creation_cost});
        arcs.push_back({apex, i, creation_cost});
    }

    FlowSolution flow = min_cost_flow(n + 1, arcs, excess, global_tolerances().absolute);

    /* Orientation convention: a transshipment flow unit i -> j covers a
     * surplus of mu at i and a deficit at j.  Since boundary(edge) puts +w
     * at the head and -w at the tail, that unit is realized by the filling
     * edge j -> i (head i absorbs the surplus, tail j the deficit). */
    std::vector<EdgeInput> filling_edges;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (flow.flow[a] <= kWeightFloor) continue;
        const FlowArc& arc = arcs[a];
        if (arc.tail < n && arc.head < n) {
            filling_edges.push_back({support[arc.head], support[arc.tail], flow.flow[a]});
        } else if (arc.tail < n) {
            /* Surplus absorbed by the apex: that much of mu's positive part
             * is charged to A. */
            result.residue.add(support[arc.tail], flow.flow[a]);
        } else {
            /* Apex feeds a deficit: negative weight of mu charged to A. */
            result.residue.add(support[arc.head], -flow.flow[a]);
        }
    }
    result.filling = PolyhedralCurrent(space, filling_edges);
    result.value = flow.cost;
    return result;
}

double narrow_gap(const AtomicMeasure& mu, const AtomicMeasure& nu, SpacePtr space,
                  double creation_cost) {
    return flat_norm(mu - nu, std::move(space), creation_cost).value;
}

}  // namespace pmc
