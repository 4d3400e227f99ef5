#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "pmc/measure.hpp"
#include "pmc/space.hpp"

namespace pmc {

/* Signed edge used to build a current.  Negative weight means the
 * opposite orientation. */
struct EdgeInput {
    int tail;
    int head;
    double weight;
};

/* One-dimensional polyhedral current: a finite set of weighted oriented
 * segments between points of a shared space.
 *
 * Canonical form, established on construction and preserved by every
 * operation:
 *   - at most one edge per unordered vertex pair, oriented by the sign of
 *     the accumulated net weight (parallel edges merge, antiparallel edges
 *     cancel),
 *   - all stored weights strictly positive (net weights at or below the
 *     weight floor are dropped),
 *   - no self-loop edges (tail == head is rejected),
 *   - edges sorted by (tail, head), so iteration order is deterministic.
 *
 * Segments may still cross or overlap geometrically; that affects how mass
 * relates to the underlying 'flow' (overlap can hide cancellation) but not
 * any combinatorial operation.  `interior_overlaps` reports such pairs for
 * embedded spaces.
 */
class PolyhedralCurrent {
  public:
    struct Edge {
        int tail;
        int head;
        double weight;  // > 0

        bool operator==(const Edge&) const = default;
    };

    explicit PolyhedralCurrent(SpacePtr space);
    PolyhedralCurrent(SpacePtr space, std::span<const EdgeInput> edges);
    PolyhedralCurrent(SpacePtr space, std::initializer_list<EdgeInput> edges);

    const SpacePtr& space() const { return space_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool empty() const { return edges_.empty(); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /* Signed weight on the ordered pair (tail, head): positive if the
     * canonical edge runs that way, negative if it runs opposite, zero if
     * absent. */
    double signed_weight(int tail, int head) const;

    bool operator==(const PolyhedralCurrent& other) const;

  private:
    SpacePtr space_;
    std::vector<Edge> edges_;
};

/* Total mass: sum of weight * segment length. */
double mass(const PolyhedralCurrent& t);

/* Boundary 0-current: each edge contributes weight at its head and minus
 * the weight at its tail.  Weights of the result always sum to zero. */
AtomicMeasure boundary(const PolyhedralCurrent& t);

/* Restriction to the edges whose both endpoints lie in `vertices`. */
PolyhedralCurrent restrict_to_vertices(const PolyhedralCurrent& t, std::span<const int> vertices);

/* Restriction to the edges selected by a predicate. */
PolyhedralCurrent restrict_to_edges(const PolyhedralCurrent& t,
                                    const std::function<bool(const PolyhedralCurrent::Edge&)>& keep);

struct SubcurrentWitness {
    bool holds = false;
    /* For each edge of S, its weight divided by the weight of the matching
     * edge of T (clamped to [0,1]); meaningful when `holds`. */
    std::vector<double> fractions;
    /* Description of the first obstruction when `holds` is false. */
    std::string obstruction;
};

/* S <= T: every edge of S appears in T with the same orientation and no
 * larger weight (within tol).  Equivalent to mass(T - S) + mass(S) =
 * mass(T) for canonical currents.  Requires both currents on the same
 * space. */
SubcurrentWitness is_subcurrent(const PolyhedralCurrent& s, const PolyhedralCurrent& t,
                                double tol = 1e-12);

PolyhedralCurrent add(const PolyhedralCurrent& a, const PolyhedralCurrent& b);
/* T - S with antiparallel cancellation (the complement current when
 * S <= T). */
PolyhedralCurrent difference(const PolyhedralCurrent& a, const PolyhedralCurrent& b);
/* Scales all weights by c >= 0; c at or below the weight floor yields the
 * zero current. */
PolyhedralCurrent scale(const PolyhedralCurrent& t, double c);

/* Relabels vertices through `vertex_map` (one target index per source
 * space point) into `target`.  Edges collapsed to a point (map[tail] ==
 * map[head]) vanish; boundary commutes with the same push-forward of
 * measures. */
PolyhedralCurrent push_forward(const PolyhedralCurrent& t, std::span<const int> vertex_map,
                               SpacePtr target);

/* Push-forward of a 0-current under the same vertex relabeling. */
AtomicMeasure push_forward_measure(const AtomicMeasure& mu, std::span<const int> vertex_map,
                                   int target_size);

/* Scalar field on an embedded space: affine (gradient and offset; exact
 * integration) or an arbitrary callable (midpoint quadrature). */
class ScalarField {
  public:
    struct Affine {
        std::vector<double> gradient;
        double offset = 0.0;
    };
    using Callable = std::function<double(std::span<const double>)>;

    static ScalarField affine(std::vector<double> gradient, double offset);
    static ScalarField constant(double value);
    static ScalarField callable(Callable fn);

    double operator()(std::span<const double> x) const;
    bool is_affine() const { return std::holds_alternative<Affine>(rep_); }
    const Affine& affine_rep() const { return std::get<Affine>(rep_); }

  private:
    explicit ScalarField(std::variant<Affine, Callable> rep) : rep_(std::move(rep)) {}

    std::variant<Affine, Callable> rep_;
};

/* Simple 1-form f dpi.  `lip_pi` is the Lipschitz constant of pi: computed
 * exactly (dual norm of the gradient) when pi is affine and the space norm
 * is known, otherwise as declared by the caller. */
struct Form {
    ScalarField f;
    ScalarField pi;
    double lip_pi = 0.0;
};

/* Builds an affine form and fills in the exact Lipschitz constant of pi
 * for the given space norm. */
Form make_affine_form(std::vector<double> f_gradient, double f_offset,
                      std::vector<double> pi_gradient, double pi_offset, NormP p);

/* Action of the current on f dpi: per edge, the Riemann-Stieltjes sum of
 * f against increments of pi over `refinement` equal sub-segments with
 * midpoint sampling, times the edge weight.  Exact for affine f and pi at
 * any refinement.  Requires an embedded space and refinement >= 1.
 *
 * With f == 1 this telescopes to the pairing of boundary(t) with pi at any
 * refinement, and |evaluate| <= sup|f| * Lip(pi) * mass(t) over the edge
 * set. */
double evaluate(const PolyhedralCurrent& t, const Form& form, int refinement = 1);

/* Pairing of a 0-current with a scalar field at the space points. */
double pair_measure(const AtomicMeasure& mu, const ScalarField& field, const EmbeddedSpace& space);

struct OverlapReport {
    /* Pairs of edge indices whose segments overlap in more than one point
     * (collinear with overlapping spans). */
    std::vector<std::pair<int, int>> pairs;
    bool ok() const { return pairs.empty(); }
};

/* Detects collinear interior overlaps between distinct edges of an
 * embedded current.  Purely diagnostic: canonical form only merges edges
 * sharing both endpoints, so geometric overlap is legal but worth
 * surfacing when a current is meant to be a flow without hidden
 * cancellation. */
OverlapReport interior_overlaps(const PolyhedralCurrent& t, double tol = 1e-12);

}  // namespace pmc
