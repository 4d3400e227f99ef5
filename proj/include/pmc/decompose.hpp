#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmc/current.hpp"
#include "pmc/path.hpp"

namespace pmc {

/* Weighted family of polygonal curves: the discrete analogue of a measure
 * on curve space.  Atom order is meaningful only for reproducibility. */
struct TransportAtom {
    double weight;  // > 0
    Path path;

    bool operator==(const TransportAtom&) const = default;
};

class Transport {
  public:
    Transport() = default;
    explicit Transport(std::vector<TransportAtom> atoms);

    const std::vector<TransportAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    int size() const { return static_cast<int>(atoms_.size()); }

    /* Total weight: the transport's measure of all of curve space. */
    double total_weight() const;

    /* Distribution of curve start points (t = 0) or end points (t = 1):
     * sum of weight * dirac(endpoint). */
    AtomicMeasure start_measure() const;
    AtomicMeasure end_measure() const;

    bool operator==(const Transport&) const = default;

  private:
    std::vector<TransportAtom> atoms_;
};

/* Sum of weight * parametric length over the atoms: what the transport
 * pays for moving its mass.  Always at least the mass of the synthesized
 * current; the excess is cancellation between overlapping curves. */
double transport_cost(const Transport& transport, const Space& space);

/* Current carried by a weighted path: its consecutive edges with the
 * path's weight.  A constant path carries the zero current. */
PolyhedralCurrent path_current(const Path& path, double weight, SpacePtr space);

/* Superposition of all atom currents (with cancellation). */
PolyhedralCurrent synthesize(const Transport& transport, SpacePtr space);

struct CycleSplit {
    PolyhedralCurrent cycles;   // boundaryless subcurrent
    PolyhedralCurrent acyclic;  // remainder; no directed cycle in its support
};

/* Splits T = cycles + acyclic by repeatedly removing directed cycles from
 * the support graph: depth-first search from the lowest vertex index,
 * always taking the lowest-index neighbor first, subtracting each found
 * cycle at its minimum edge weight (which deletes at least one edge).
 *
 * The split is generally not unique (three arcs between two points split
 * differently depending on scan order); this one is the deterministic
 * outcome of the rule above.  The cycle part always has exact zero
 * boundary; the remainder admits no nonzero boundaryless subcurrent.
 */
CycleSplit extract_cycles(const PolyhedralCurrent& t);

/* Decomposes an acyclic current into weighted simple paths:
 *
 *   repeat until no edges remain:
 *     take a minimum-weight edge (ties: lowest (tail, head)),
 *     extend it to a maximal path in both directions
 *       (ties: lowest-index neighbor),
 *     subtract the path at the minimum edge's weight.
 *
 * Each round deletes the chosen edge outright, so there are at most as
 * many atoms as edges.  Maximality of each path forces its endpoints to be
 * sources/sinks of the residual, which is what makes the start and end
 * distributions reproduce the boundary parts exactly:
 *   end_measure = jordan(boundary(T)).positive,
 *   start_measure = jordan(boundary(T)).negative,
 * and synthesize(result) = T edge-wise with no cancellation.
 *
 * Throws NotAcyclicError (naming a cycle) if the support has one.
 */
Transport decompose(const PolyhedralCurrent& t);

struct LoopSplit {
    Path base;                 // the path with the loop excised
    std::optional<Path> loop;  // closed subpath, absent when base is an arc
};

/* Removes one loop from a path: among all pairs of equal vertices, excise
 * the subpath of maximum parametric length (ties: earliest pair).  The
 * remaining path keeps the other edges in order; excising a loop that is
 * the whole path leaves the constant path at its base point. */
LoopSplit remove_loop(const Path& path, const Space& space);

struct ArcSplit {
    Transport arcs;   // every path an arc (or constant)
    Transport loops;  // the excised closed paths with their weights
};

/* Applies remove_loop until every atom is an arc.  Edge multisets are
 * preserved: synthesize(arcs) + synthesize(loops) = synthesize(input). */
ArcSplit to_arcs(const Transport& transport, const Space& space);

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

struct DecompositionReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/* Validates a claimed decomposition of T:
 *   (a) synthesize(transport) == T edge-wise,
 *   (b) transport_cost == mass(T) (no cancellation),
 *   (c) end/start measures == boundary parts of T atom-for-atom,
 *   (d) every path is an arc,
 *   (e) every atom's current is a subcurrent of T,
 *   (f) restriction identity on seeded random vertex subsets:
 *       mass(T restricted) == sum of restricted atom masses.
 * Residuals are absolute; checks pass within `tol` scaled by mass(T). */
DecompositionReport verify_decomposition(const PolyhedralCurrent& t, const Transport& transport,
                                         std::uint64_t seed = 0, int subset_samples = 8,
                                         double tol = 1e-9);

}  // namespace pmc
