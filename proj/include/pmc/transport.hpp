#pragma once

#include <map>

#include "pmc/decompose.hpp"
#include "pmc/measure.hpp"
#include "pmc/space.hpp"

namespace pmc {

/* Totals must agree to this absolute slack before two measures can be
 * coupled by a plan. */
inline constexpr double kMassMatchTolerance = 1e-12;

/* Rescales a nonnegative measure to the given total weight (the helper
 * for meeting the equal-total precondition of kantorovich).  Requires a
 * positive current total and a positive finite target. */
AtomicMeasure normalize_total(const AtomicMeasure& mu, double target_total);

/* Transport plan between two nonnegative measures of equal total weight:
 * nonnegative mass per (source, target) pair with the measures as
 * marginals. */
struct PlanEntry {
    int source;
    int target;
    double mass;  // > 0
};

class Plan {
  public:
    Plan() = default;
    explicit Plan(std::vector<PlanEntry> entries);

    const std::vector<PlanEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    AtomicMeasure source_marginal() const;
    AtomicMeasure target_marginal() const;

    /* Sum of mass * distance. */
    double cost(const Space& space) const;

  private:
    std::vector<PlanEntry> entries_;
};

struct KantorovichResult {
    Plan plan;
    double cost = 0.0;
    /* Optimal dual potential: 1-Lipschitz on the union of supports, with
     *   sum over atoms of potential * (plus - minus) == cost.
     * Keys are the union of the two supports. */
    std::map<int, double> potentials;
};

/* First Wasserstein distance between two balanced nonnegative measures,
 * solved as a bipartite minimum-cost flow by successive shortest paths
 * with node potentials.  The returned dual potential is re-extended by
 * inf-convolution with the distance so it is 1-Lipschitz on the whole
 * support union, not only across plan pairs.
 *
 * Requires nonempty supports, nonnegative atoms, and equal totals within
 * kMassMatchTolerance (absolute); violations throw ValidationError naming
 * the totals. */
KantorovichResult kantorovich(const AtomicMeasure& plus, const AtomicMeasure& minus,
                              const Space& space);

/* Certified suboptimality of a feasibility pair: given any 1-Lipschitz
 * potential f (validated pairwise on the support union; violations throw),
 * returns w1 - sum f d(plus - minus) >= 0.  Zero within tolerance exactly
 * for optimal potentials. */
double duality_gap(const AtomicMeasure& plus, const AtomicMeasure& minus,
                   const std::map<int, double>& potential, double w1, const Space& space);

/* Turns a plan into curves: one atom per entry, walking the straight
 * chord from source to target in `chord_steps` equal steps (interpolated
 * points are appended to the space; chord_steps == 1 adds nothing).
 * Entries with source == target become constant paths.  Subdivision
 * (chord_steps > 1) needs linear structure, so bare metric spaces refuse
 * it with UnsupportedGeodesicError; one-step chords work everywhere. */
Transport plan_to_transport(const Plan& plan, Space& space, int chord_steps = 1);

struct BeckmannCertificate {
    double w1 = 0.0;
    double current_mass = 0.0;
    double mass_gap = 0.0;      // |current_mass - w1|
    double cycle_mass = 0.0;    // mass of extract_cycles(current).cycles
    double duality_gap = 0.0;   // of the kantorovich potential
    double boundary_gap = 0.0;  // TV(boundary(current) - (plus - minus))

    bool ok(double tol) const;
};

struct BeckmannResult {
    PolyhedralCurrent current;
    Transport transport;
    KantorovichResult kantorovich;
    BeckmannCertificate certificate;
};

/* The flow-form optimum: a current whose boundary is plus - minus and
 * whose mass equals W1(plus, minus).  Built by synthesizing the optimal
 * plan's chords; the certificate checks mass against W1, the boundary
 * identity, acyclicity (a mass minimizer admits no nonzero cycle), and
 * the dual gap.  Works on embedded spaces via straight chords and on bare
 * metric spaces via direct source-to-target edges (the one-step shadow of
 * the chord construction; the mass identity is unaffected because plan
 * entries never cancel). */
BeckmannResult beckmann(const AtomicMeasure& plus, const AtomicMeasure& minus, SpacePtr space);

}  // namespace pmc
