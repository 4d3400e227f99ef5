#include "pmc/current.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pmc/kernels.hpp"

namespace pmc {

namespace {

void check_space(const SpacePtr& space) {
    if (!space) throw ValidationError("current: null space handle");
}

/* Net signed weight per unordered pair; key (a, b) with a < b, positive
 * weight means a -> b. */
std::map<std::pair<int, int>, double> accumulate(const SpacePtr& space,
                                                 std::span<const EdgeInput> edges) {
    const int n = space->size();
    std::map<std::pair<int, int>, double> net;
    for (const EdgeInput& e : edges) {
        if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
            std::ostringstream msg;
            msg << "current: edge (" << e.tail << ", " << e.head << ") out of range [0, " << n
                << ")";
            throw ValidationError(msg.str());
        }
        if (e.tail == e.head) throw ValidationError("current: degenerate edge (tail == head)");
        if (!std::isfinite(e.weight)) throw ValidationError("current: non-finite edge weight");
        if (e.tail < e.head) {
            net[{e.tail, e.head}] += e.weight;
        } else {
            net[{e.head, e.tail}] -= e.weight;
        }
    }
    return net;
}

}  // namespace

PolyhedralCurrent::PolyhedralCurrent(SpacePtr space) : space_(std::move(space)) {
    check_space(space_);
}

PolyhedralCurrent::PolyhedralCurrent(SpacePtr space, std::span<const EdgeInput> edges)
    : space_(std::move(space)) {
    check_space(space_);
    for (const auto& [pair, weight] : accumulate(space_, edges)) {
        if (std::abs(weight) <= kWeightFloor) continue;
        if (weight > 0) {
            edges_.push_back({pair.first, pair.second, weight});
        } else {
            edges_.push_back({pair.second, pair.first, -weight});
        }
    }
    /* The map iterates by unordered pair, which is already deterministic;
     * re-sort by oriented (tail, head) for a stable public order. */
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
    });
}

PolyhedralCurrent::PolyhedralCurrent(SpacePtr space, std::initializer_list<EdgeInput> edges)
    : PolyhedralCurrent(std::move(space), std::span<const EdgeInput>(edges.begin(), edges.size())) {}

double PolyhedralCurrent::signed_weight(int tail, int head) const {
    for (const Edge& e : edges_) {
        if (e.tail == tail && e.head == head) return e.weight;
        if (e.tail == head && e.head == tail) return -e.weight;
    }
    return 0.0;
}

bool PolyhedralCurrent::operator==(const PolyhedralCurrent& other) const {
    return same_space(space_, other.space_) && edges_ == other.edges_;
}

double mass(const PolyhedralCurrent& t) {
    const auto& edges = t.edges();
    std::vector<double> terms(edges.size());
    kernels::map_index(edges.size(), terms.data(), [&](std::size_t i) {
        return edges[i].weight * t.space()->distance(edges[i].tail, edges[i].head);
    });
    return kernels::sum_serial(terms);
}

AtomicMeasure boundary(const PolyhedralCurrent& t) {
    AtomicMeasure mu;
    for (const auto& e : t.edges()) {
        mu.add(e.head, e.weight);
        mu.add(e.tail, -e.weight);
    }
    return mu;
}

PolyhedralCurrent restrict_to_vertices(const PolyhedralCurrent& t, std::span<const int> vertices) {
    std::unordered_set<int> keep(vertices.begin(), vertices.end());
    return restrict_to_edges(t, [&](const PolyhedralCurrent::Edge& e) {
        return keep.count(e.tail) > 0 && keep.count(e.head) > 0;
    });
}

PolyhedralCurrent restrict_to_edges(
    const PolyhedralCurrent& t,
    const std::function<bool(const PolyhedralCurrent::Edge&)>& keep) {
    std::vector<EdgeInput> kept;
    for (const auto& e : t.edges()) {
        if (keep(e)) kept.push_back({e.tail, e.head, e.weight});
    }
    return {t.space(), kept};
}

SubcurrentWitness is_subcurrent(const PolyhedralCurrent& s, const PolyhedralCurrent& t,
                                double tol) {
    if (!same_space(s.space(), t.space())) {
        throw ValidationError("is_subcurrent: currents live on different spaces");
    }
    SubcurrentWitness w;
    w.fractions.reserve(s.edges().size());
    for (const auto& e : s.edges()) {
        const double tw = t.signed_weight(e.tail, e.head);
        if (tw <= 0.0) {
            std::ostringstream msg;
            msg << "edge (" << e.tail << ", " << e.head << ") "
                << (tw == 0.0 ? "absent from" : "reversed in") << " the ambient current";
            w.obstruction = msg.str();
            return w;
        }
        if (e.weight > tw + tol) {
            std::ostringstream msg;
            msg << "edge (" << e.tail << ", " << e.head << ") exceeds ambient weight (" << e.weight
                << " > " << tw << ")";
            w.obstruction = msg.str();
            return w;
        }
        w.fractions.push_back(std::clamp(e.weight / tw, 0.0, 1.0));
    }
    w.holds = true;
    return w;
}

namespace {

PolyhedralCurrent combine(const PolyhedralCurrent& a, const PolyhedralCurrent& b, double sign_b) {
    if (!same_space(a.space(), b.space())) {
        throw ValidationError("current arithmetic: currents live on different spaces");
    }
    std::vector<EdgeInput> inputs;
    inputs.reserve(a.edges().size() + b.edges().size());
    for (const auto& e : a.edges()) inputs.push_back({e.tail, e.head, e.weight});
    for (const auto& e : b.edges()) inputs.push_back({e.tail, e.head, sign_b * e.weight});
    return {a.space(), inputs};
}

}  // namespace

PolyhedralCurrent add(const PolyhedralCurrent& a, const PolyhedralCurrent& b) {
    return combine(a, b, 1.0);
}

PolyhedralCurrent difference(const PolyhedralCurrent& a, const PolyhedralCurrent& b) {
    return combine(a, b, -1.0);
}

PolyhedralCurrent scale(const PolyhedralCurrent& t, double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw ValidationError("scale: factor must be finite and nonnegative");
    }
    std::vector<EdgeInput> inputs;
    inputs.reserve(t.edges().size());
    for (const auto& e : t.edges()) inputs.push_back({e.tail, e.head, c * e.weight});
    return {t.space(), inputs};
}

PolyhedralCurrent push_forward(const PolyhedralCurrent& t, std::span<const int> vertex_map,
                               SpacePtr target) {
    check_space(target);
    if (static_cast<int>(vertex_map.size()) != t.space()->size()) {
        throw ValidationError("push_forward: vertex map must cover the source space");
    }
    const int m = target->size();
    std::vector<EdgeInput> inputs;
    for (const auto& e : t.edges()) {
        const int tail = vertex_map[e.tail];
        const int head = vertex_map[e.head];
        if (tail < 0 || tail >= m || head < 0 || head >= m) {
            throw ValidationError("push_forward: mapped index out of target range");
        }
        if (tail == head) continue;  // edge collapsed to a point
        inputs.push_back({tail, head, e.weight});
    }
    return {std::move(target), inputs};
}

AtomicMeasure push_forward_measure(const AtomicMeasure& mu, std::span<const int> vertex_map,
                                   int target_size) {
    AtomicMeasure out;
    for (const auto& [index, weight] : mu.atoms()) {
        if (index >= static_cast<int>(vertex_map.size())) {
            throw ValidationError("push_forward: vertex map must cover the measure support");
        }
        const int mapped = vertex_map[index];
        if (mapped < 0 || mapped >= target_size) {
            throw ValidationError("push_forward: mapped index out of target range");
        }
        out.add(mapped, weight);
    }
    return out;
}

ScalarField ScalarField::affine(std::vector<double> gradient, double offset) {
    for (double g : gradient) {
        if (!std::isfinite(g)) throw ValidationError("scalar field: non-finite gradient");
    }
    if (!std::isfinite(offset)) throw ValidationError("scalar field: non-finite offset");
    return ScalarField(Affine{std::move(gradient), offset});
}

ScalarField ScalarField::constant(double value) { return affine({}, value); }

ScalarField ScalarField::callable(Callable fn) {
    if (!fn) throw ValidationError("scalar field: empty callable");
    return ScalarField(std::move(fn));
}

double ScalarField::operator()(std::span<const double> x) const {
    if (const Affine* a = std::get_if<Affine>(&rep_)) {
        if (a->gradient.size() > x.size()) {
            throw ValidationError("scalar field: point has fewer coordinates than the gradient");
        }
        double v = a->offset;
        for (std::size_t c = 0; c < a->gradient.size(); ++c) v += a->gradient[c] * x[c];
        return v;
    }
    return std::get<Callable>(rep_)(x);
}

Form make_affine_form(std::vector<double> f_gradient, double f_offset,
                      std::vector<double> pi_gradient, double pi_offset, NormP p) {
    const double lip = dual_norm_p(pi_gradient, p);
    return {ScalarField::affine(std::move(f_gradient), f_offset),
            ScalarField::affine(std::move(pi_gradient), pi_offset), lip};
}

double evaluate(const PolyhedralCurrent& t, const Form& form, int refinement) {
    if (refinement < 1) throw ValidationError("evaluate: refinement must be at least 1");
    const EmbeddedSpace& space = t.space()->embedded();  // rejects bare metrics
    const int dim = space.dimension();
    const auto& edges = t.edges();

    std::vector<double> terms(edges.size());
    kernels::map_index(edges.size(), terms.data(), [&](std::size_t idx) {
        const auto& e = edges[idx];
        std::span<const double> a = space.point(e.tail);
        std::span<const double> b = space.point(e.head);
        std::vector<double> x(dim);
        double sum = 0.0;
        double pi_prev = 0.0;
        {
            for (int c = 0; c < dim; ++c) x[c] = a[c];
            pi_prev = form.pi(x);
        }
        for (int s = 1; s <= refinement; ++s) {
            const double t_mid = (static_cast<double>(s) - 0.5) / refinement;
            for (int c = 0; c < dim; ++c) x[c] = (1.0 - t_mid) * a[c] + t_mid * b[c];
            const double f_mid = form.f(x);
            const double t_end = static_cast<double>(s) / refinement;
            for (int c = 0; c < dim; ++c) x[c] = (1.0 - t_end) * a[c] + t_end * b[c];
            const double pi_end = form.pi(x);
            sum += f_mid * (pi_end - pi_prev);
            pi_prev = pi_end;
        }
        return e.weight * sum;
    });
    return kernels::sum_serial(terms);
}

double pair_measure(const AtomicMeasure& mu, const ScalarField& field,
                    const EmbeddedSpace& space) {
    double s = 0.0;
    for (const auto& [index, weight] : mu.atoms()) s += weight * field(space.point(index));
    return s;
}

OverlapReport interior_overlaps(const PolyhedralCurrent& t, double tol) {
    const EmbeddedSpace& space = t.space()->embedded();
    const int dim = space.dimension();
    const auto& edges = t.edges();
    OverlapReport report;

    /* Two segments overlap in more than a point iff they are collinear and
     * their parameter ranges on the common line intersect in an interval.
     * Quadratic scan; this is a diagnostic, not a hot path. */
    auto collinear_overlap = [&](const PolyhedralCurrent::Edge& e1,
                                 const PolyhedralCurrent::Edge& e2) {
        std::span<const double> a = space.point(e1.tail);
        std::span<const double> b = space.point(e1.head);
        std::span<const double> c = space.point(e2.tail);
        std::span<const double> d = space.point(e2.head);
        std::vector<double> u(dim), v(dim), w(dim);
        for (int i = 0; i < dim; ++i) {
            u[i] = b[i] - a[i];
            v[i] = d[i] - c[i];
            w[i] = c[i] - a[i];
        }
        const double uu = std::inner_product(u.begin(), u.end(), u.begin(), 0.0);
        const double scale2 = std::max(uu, 1e-300);
        /* v and w must both be parallel to u. */
        auto parallel_to_u = [&](const std::vector<double>& z) {
            const double zu = std::inner_product(z.begin(), z.end(), u.begin(), 0.0);
            double residual = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double r = z[i] - zu / scale2 * u[i];
                residual += r * r;
            }
            const double zz = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
            return residual <= tol * tol * std::max(1.0, zz);
        };
        if (!parallel_to_u(v) || !parallel_to_u(w)) return false;
        /* Parameters of c and d along the line of e1. */
        const double tc = std::inner_product(w.begin(), w.end(), u.begin(), 0.0) / scale2;
        double td = tc + std::inner_product(v.begin(), v.end(), u.begin(), 0.0) / scale2;
        const double lo = std::min(tc, td), hi = std::max(tc, td);
        const double inter = std::min(1.0, hi) - std::max(0.0, lo);
        return inter > tol;
    };

    const int m = static_cast<int>(edges.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            /* Edges sharing both endpoints were already merged; sharing one
             * endpoint is legal contact. */
            if (collinear_overlap(edges[i], edges[j])) report.pairs.push_back({i, j});
        }
    }
    return report;
}

}  // namespace pmc
