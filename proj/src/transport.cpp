#include "pmc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "pmc/mincostflow.hpp"

namespace pmc {

AtomicMeasure normalize_total(const AtomicMeasure& mu, double target_total) {
    if (!(target_total > 0.0) || !std::isfinite(target_total)) {
        throw ValidationError("normalize_total: target total must be positive and finite");
    }
    for (const auto& [index, weight] : mu.atoms()) {
        (void)index;
        if (weight < 0) throw ValidationError("normalize_total: measure must be nonnegative");
    }
    const double current = mu.total_weight();
    if (!(current > 0.0)) {
        throw ValidationError("normalize_total: measure has no mass to rescale");
    }
    return mu * (target_total / current);
}

Plan::Plan(std::vector<PlanEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (!(e.mass > 0.0) || !std::isfinite(e.mass)) {
            throw ValidationError("plan: entry masses must be positive and finite");
        }
        if (e.source < 0 || e.target < 0) throw ValidationError("plan: negative atom index");
    }
}

AtomicMeasure Plan::source_marginal() const {
    AtomicMeasure mu;
    for (const auto& e : entries_) mu.add(e.source, e.mass);
    return mu;
}

AtomicMeasure Plan::target_marginal() const {
    AtomicMeasure mu;
    for (const auto& e : entries_) mu.add(e.target, e.mass);
    return mu;
}

double Plan::cost(const Space& space) const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.mass * space.distance(e.source, e.target);
    return s;
}

namespace {

void check_marginal_input(const AtomicMeasure& plus, const AtomicMeasure& minus,
                          const Space& space) {
    for (const auto& [index, weight] : plus.atoms()) {
        if (weight < 0) throw ValidationError("kantorovich: negative atom in the source measure");
        if (index >= space.size()) throw ValidationError("kantorovich: source atom outside space");
    }
    for (const auto& [index, weight] : minus.atoms()) {
        if (weight < 0) throw ValidationError("kantorovich: negative atom in the target measure");
        if (index >= space.size()) throw ValidationError("kantorovich: target atom outside space");
    }
    if (plus.empty() || minus.empty()) {
        throw ValidationError("kantorovich: both measures need nonempty support");
    }
    const double a = plus.total_weight(), b = minus.total_weight();
    if (std::abs(a - b) > kMassMatchTolerance) {
        std::ostringstream msg;
        msg << "kantorovich: total masses differ (" << a << " vs " << b
            << "); normalize_total can rescale one side";
        throw ValidationError(msg.str());
    }
}

}  // namespace

KantorovichResult kantorovich(const AtomicMeasure& plus, const AtomicMeasure& minus,
                              const Space& space) {
    check_marginal_input(plus, minus, space);

    /* Bipartite network: one node per source atom, one per target atom
     * (the same space point may appear on both sides as distinct nodes,
     * which is what lets mass stay put at zero cost). */
    std::vector<int> sources, targets;
    std::vector<double> excess;
    for (const auto& [index, weight] : plus.atoms()) {
        sources.push_back(index);
        excess.push_back(weight);
    }
    const int ns = static_cast<int>(sources.size());
    for (const auto& [index, weight] : minus.atoms()) {
        targets.push_back(index);
        excess.push_back(-weight);
    }
    const int nt = static_cast<int>(targets.size());
    /* The solver needs exact balance; charge any input rounding slack to
     * the heaviest source atom.  This moves totals by at most the
     * validated tolerance. */
    {
        double residue = 0.0;
        for (double e : excess) residue += e;
        int heaviest = 0;
        for (int i = 1; i < ns; ++i) {
            if (excess[i] > excess[heaviest]) heaviest = i;
        }
        excess[heaviest] -= residue;
    }

    std::vector<FlowArc> arcs;
    arcs.reserve(static_cast<std::size_t>(ns) * nt);
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            arcs.push_back({i, ns + j, space.distance(sources[i], targets[j])});
        }
    }

    FlowSolution flow = min_cost_flow(ns + nt, arcs, excess, global_tolerances().absolute);

    KantorovichResult result;
    std::vector<PlanEntry> entries;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (flow.flow[a] <= kWeightFloor) continue;
        entries.push_back(
            {sources[arcs[a].tail], targets[arcs[a].head - ns], flow.flow[a]});
    }
    result.plan = Plan(std::move(entries));
    result.cost = flow.cost;

    /* Dual potential.  The solver's potentials certify optimality across
     * plan pairs; re-extend by inf-convolution against the target side so
     * the result is 1-Lipschitz on the whole union (McShane extension).
     * Extension preserves the values on both supports wherever the flow's
     * complementary slackness binds, hence preserves the dual objective. */
    std::vector<int> union_points(sources);
    union_points.insert(union_points.end(), targets.begin(), targets.end());
    std::sort(union_points.begin(), union_points.end());
    union_points.erase(std::unique(union_points.begin(), union_points.end()),
                       union_points.end());
    for (int p : union_points) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < nt; ++j) {
            best = std::min(best, space.distance(p, targets[j]) - flow.potential[ns + j]);
        }
        result.potentials[p] = best;
    }
    return result;
}

double duality_gap(const AtomicMeasure& plus, const AtomicMeasure& minus,
                   const std::map<int, double>& potential, double w1, const Space& space) {
    std::vector<int> support;
    for (const auto& [index, weight] : plus.atoms()) support.push_back(index);
    for (const auto& [index, weight] : minus.atoms()) support.push_back(index);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    const Tolerances& tol = global_tolerances();
    double value_scale = 1.0;
    for (int p : support) {
        auto it = potential.find(p);
        if (it == potential.end()) {
            std::ostringstream msg;
            msg << "duality gap: potential missing at support point " << p;
            throw ValidationError(msg.str());
        }
        value_scale = std::max(value_scale, std::abs(it->second));
    }
    for (std::size_t a = 0; a < support.size(); ++a) {
        for (std::size_t b = a + 1; b < support.size(); ++b) {
            const double d = space.distance(support[a], support[b]);
            const double gap = std::abs(potential.at(support[a]) - potential.at(support[b]));
            if (gap > d + tol.relative * std::max(value_scale, d) + tol.absolute) {
                std::ostringstream msg;
                msg << "duality gap: potential is not 1-Lipschitz between points " << support[a]
                    << " and " << support[b] << " (|df| = " << gap << ", d = " << d << ")";
                throw ValidationError(msg.str());
            }
        }
    }

    double dual_value = 0.0;
    for (const auto& [index, weight] : plus.atoms()) dual_value += weight * potential.at(index);
    for (const auto& [index, weight] : minus.atoms()) dual_value -= weight * potential.at(index);
    return w1 - dual_value;
}

Transport plan_to_transport(const Plan& plan, Space& space, int chord_steps) {
    if (chord_steps < 1) throw ValidationError("plan_to_transport: chord steps must be >= 1");
    if (chord_steps > 1 && !space.is_embedded()) {
        throw UnsupportedGeodesicError(
            "plan_to_transport: subdividing chords needs linear structure (bare metric space)");
    }
    std::vector<TransportAtom> atoms;
    atoms.reserve(plan.entries().size());
    for (const auto& e : plan.entries()) {
        if (e.source == e.target) {
            atoms.push_back({e.mass, Path({e.source})});
        } else if (chord_steps == 1) {
            atoms.push_back({e.mass, Path({e.source, e.target})});
        } else {
            atoms.push_back(
                {e.mass, geodesic_chord(space.embedded(), e.source, e.target, chord_steps)});
        }
    }
    return Transport(std::move(atoms));
}

bool BeckmannCertificate::ok(double tol) const {
    const double scale = std::max(1.0, w1);
    return mass_gap <= tol * scale && cycle_mass <= tol * scale && duality_gap <= tol * scale &&
           boundary_gap <= tol * scale;
}

BeckmannResult beckmann(const AtomicMeasure& plus, const AtomicMeasure& minus, SpacePtr space) {
    if (!space) throw ValidationError("beckmann: null space handle");
    KantorovichResult kr = kantorovich(plus, minus, *space);

    /* Straight one-step chords introduce no new points, so the shared
     * space stays valid; metric spaces take the same one-step route.
     * Paths run target -> source (minus -> plus): a path's boundary puts
     * positive weight at its end, so ending at the plus atoms is what
     * makes boundary(current) = plus - minus. */
    std::vector<TransportAtom> atoms;
    for (const auto& e : kr.plan.entries()) {
        if (e.source == e.target) {
            atoms.push_back({e.mass, Path({e.source})});
        } else {
            atoms.push_back({e.mass, Path({e.target, e.source})});
        }
    }
    Transport transport(std::move(atoms));
    PolyhedralCurrent current = synthesize(transport, space);

    BeckmannResult result{std::move(current), std::move(transport), std::move(kr), {}};
    BeckmannCertificate& cert = result.certificate;
    cert.w1 = result.kantorovich.cost;
    cert.current_mass = mass(result.current);
    cert.mass_gap = std::abs(cert.current_mass - cert.w1);
    cert.cycle_mass = mass(extract_cycles(result.current).cycles);
    cert.duality_gap =
        duality_gap(plus, minus, result.kantorovich.potentials, cert.w1, *space);
    cert.boundary_gap = total_variation(boundary(result.current) - (plus - minus));
    return result;
}

}  // namespace pmc
