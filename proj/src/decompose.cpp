#include "pmc/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace pmc {

Transport::Transport(std::vector<TransportAtom> atoms) : atoms_(std::move(atoms)) {
    for (const auto& atom : atoms_) {
        if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
            throw ValidationError("transport: atom weights must be positive and finite");
        }
        if (atom.path.vertices.empty()) throw ValidationError("transport: empty path");
    }
}

double Transport::total_weight() const {
    double s = 0.0;
    for (const auto& atom : atoms_) s += atom.weight;
    return s;
}

AtomicMeasure Transport::start_measure() const {
    AtomicMeasure mu;
    for (const auto& atom : atoms_) mu.add(atom.path.vertices.front(), atom.weight);
    return mu;
}

AtomicMeasure Transport::end_measure() const {
    AtomicMeasure mu;
    for (const auto& atom : atoms_) mu.add(atom.path.vertices.back(), atom.weight);
    return mu;
}

double transport_cost(const Transport& transport, const Space& space) {
    double s = 0.0;
    for (const auto& atom : transport.atoms()) {
        s += atom.weight * parametric_length(atom.path, space);
    }
    return s;
}

PolyhedralCurrent path_current(const Path& path, double weight, SpacePtr space) {
    if (weight < 0.0) {
        throw ValidationError("path_current: curve weights are nonnegative");
    }
    std::vector<EdgeInput> edges;
    edges.reserve(path.vertices.size());
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        edges.push_back({path.vertices[i], path.vertices[i + 1], weight});
    }
    return {std::move(space), edges};
}

PolyhedralCurrent synthesize(const Transport& transport, SpacePtr space) {
    std::vector<EdgeInput> edges;
    for (const auto& atom : transport.atoms()) {
        for (std::size_t i = 0; i + 1 < atom.path.vertices.size(); ++i) {
            edges.push_back({atom.path.vertices[i], atom.path.vertices[i + 1], atom.weight});
        }
    }
    return {std::move(space), edges};
}

namespace {

/* Mutable adjacency view of a current for the subtractive algorithms.
 * Vertices are remapped to the dense range [0, n) of vertices actually
 * used; adjacency lists are sorted so "lowest index first" is a plain
 * front-to-back scan. */
struct SupportGraph {
    std::vector<int> vertices;               // dense slot -> original index, ascending
    std::map<int, int> slot_of;              // original index -> dense slot
    std::map<std::pair<int, int>, double> weight;  // (tail, head) slots, > 0
    std::vector<std::vector<int>> out;       // sorted head slots
    std::vector<std::vector<int>> in;        // sorted tail slots

    explicit SupportGraph(const PolyhedralCurrent& t) {
        for (const auto& e : t.edges()) {
            slot_of.emplace(e.tail, 0);
            slot_of.emplace(e.head, 0);
        }
        for (auto& [original, slot] : slot_of) {
            slot = static_cast<int>(vertices.size());
            vertices.push_back(original);
        }
        out.resize(vertices.size());
        in.resize(vertices.size());
        for (const auto& e : t.edges()) {
            const int a = slot_of.at(e.tail), b = slot_of.at(e.head);
            weight.emplace(std::pair{a, b}, e.weight);
            out[a].push_back(b);
            in[b].push_back(a);
        }
        for (auto& lst : out) std::sort(lst.begin(), lst.end());
        for (auto& lst : in) std::sort(lst.begin(), lst.end());
    }

    bool has_edge(int a, int b) const { return weight.count({a, b}) > 0; }

    void remove_edge(int a, int b) {
        weight.erase({a, b});
        auto drop = [](std::vector<int>& lst, int v) {
            lst.erase(std::find(lst.begin(), lst.end(), v));
        };
        drop(out[a], b);
        drop(in[b], a);
    }

    /* Subtracts w from edge (a, b), deleting it when the residual sinks to
     * the weight floor.  The minimum edge of a round subtracts its own
     * weight, which is exactly zero in floating point. */
    void subtract(int a, int b, double w) {
        auto it = weight.find({a, b});
        it->second -= w;
        if (it->second <= kWeightFloor) remove_edge(a, b);
    }

    bool empty() const { return weight.empty(); }

    /* First directed cycle found by DFS from the lowest vertex, lowest
     * neighbor first; empty when acyclic.  Returned as vertex slots with
     * the entry vertex first (not repeated at the end). */
    std::vector<int> find_cycle() const {
        const int n = static_cast<int>(vertices.size());
        std::vector<int> color(n, 0);  // 0 fresh, 1 on stack, 2 done
        std::vector<int> stack, cycle;
        for (int start = 0; start < n && cycle.empty(); ++start) {
            if (color[start] != 0) continue;
            /* Iterative DFS with explicit neighbor cursors. */
            std::vector<std::size_t> cursor;
            stack.clear();
            stack.push_back(start);
            cursor.push_back(0);
            color[start] = 1;
            while (!stack.empty()) {
                const int v = stack.back();
                if (cursor.back() < out[v].size()) {
                    const int w = out[v][cursor.back()++];
                    if (color[w] == 1) {
                        /* Back edge: the cycle is the stack from w. */
                        auto at = std::find(stack.begin(), stack.end(), w);
                        cycle.assign(at, stack.end());
                        break;
                    }
                    if (color[w] == 0) {
                        color[w] = 1;
                        stack.push_back(w);
                        cursor.push_back(0);
                    }
                } else {
                    color[v] = 2;
                    stack.pop_back();
                    cursor.pop_back();
                }
            }
            if (!cycle.empty()) break;
        }
        return cycle;
    }
};

}  // namespace

CycleSplit extract_cycles(const PolyhedralCurrent& t) {
    SupportGraph graph(t);
    std::vector<EdgeInput> cycle_edges;

    while (true) {
        std::vector<int> cycle = graph.find_cycle();
        if (cycle.empty()) break;
        double w = std::numeric_limits<double>::infinity();
        const std::size_t len = cycle.size();
        for (std::size_t i = 0; i < len; ++i) {
            w = std::min(w, graph.weight.at({cycle[i], cycle[(i + 1) % len]}));
        }
        for (std::size_t i = 0; i < len; ++i) {
            const int a = cycle[i], b = cycle[(i + 1) % len];
            cycle_edges.push_back({graph.vertices[a], graph.vertices[b], w});
            graph.subtract(a, b, w);
        }
    }

    std::vector<EdgeInput> rest;
    for (const auto& [pair, w] : graph.weight) {
        rest.push_back({graph.vertices[pair.first], graph.vertices[pair.second], w});
    }
    return {PolyhedralCurrent(t.space(), cycle_edges), PolyhedralCurrent(t.space(), rest)};
}

Transport decompose(const PolyhedralCurrent& t) {
    SupportGraph graph(t);
    {
        std::vector<int> cycle = graph.find_cycle();
        if (!cycle.empty()) {
            std::ostringstream msg;
            std::vector<int> named;
            msg << "decompose: support has a directed cycle:";
            for (int slot : cycle) {
                named.push_back(graph.vertices[slot]);
                msg << ' ' << graph.vertices[slot];
            }
            named.push_back(named.front());
            msg << ' ' << named.front();
            throw NotAcyclicError(msg.str(), std::move(named));
        }
    }

    std::vector<TransportAtom> atoms;
    while (!graph.empty()) {
        /* Minimum-weight edge; ties to the lowest (tail, head).  The map
         * iterates in key order, so "<" keeps the first among ties. */
        std::pair<int, int> seed{-1, -1};
        double w = std::numeric_limits<double>::infinity();
        for (const auto& [pair, weight] : graph.weight) {
            if (weight < w) {
                w = weight;
                seed = pair;
            }
        }

        /* Grow a maximal path through the seed.  The support is acyclic,
         * so extension never revisits a vertex and must terminate. */
        std::vector<int> slots{seed.first, seed.second};
        while (!graph.out[slots.back()].empty()) slots.push_back(graph.out[slots.back()].front());
        while (!graph.in[slots.front()].empty()) {
            slots.insert(slots.begin(), graph.in[slots.front()].front());
        }

        std::vector<int> named;
        named.reserve(slots.size());
        for (int slot : slots) named.push_back(graph.vertices[slot]);
        atoms.push_back({w, Path(std::move(named))});

        for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
            graph.subtract(slots[i], slots[i + 1], w);
        }
    }
    return Transport(std::move(atoms));
}

LoopSplit remove_loop(const Path& path, const Space& space) {
    const auto& v = path.vertices;
    const int n = static_cast<int>(v.size());

    /* Prefix lengths make every candidate loop length an O(1) lookup. */
    std::vector<double> prefix(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        prefix[i + 1] = prefix[i] + space.distance(v[i], v[i + 1]);
    }

    int best_i = -1, best_j = -1;
    double best_len = -1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (v[i] != v[j]) continue;
            const double len = prefix[j] - prefix[i];
            if (len > best_len) {
                best_len = len;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i < 0) return {path, std::nullopt};

    Path loop(std::vector<int>(v.begin() + best_i, v.begin() + best_j + 1));
    std::vector<int> rest(v.begin(), v.begin() + best_i);
    rest.insert(rest.end(), v.begin() + best_j, v.end());
    /* Excising everything leaves the constant path at the meeting point. */
    return {Path(std::move(rest)), std::move(loop)};
}

ArcSplit to_arcs(const Transport& transport, const Space& space) {
    std::vector<TransportAtom> arcs;
    std::vector<TransportAtom> loops;
    for (const auto& atom : transport.atoms()) {
        Path current = atom.path;
        while (!current.is_arc()) {
            LoopSplit split = remove_loop(current, space);
            loops.push_back({atom.weight, std::move(*split.loop)});
            current = std::move(split.base);
        }
        if (!current.is_constant()) arcs.push_back({atom.weight, std::move(current)});
    }
    return {Transport(std::move(arcs)), Transport(std::move(loops))};
}

bool DecompositionReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

double measure_gap(const AtomicMeasure& a, const AtomicMeasure& b) {
    return total_variation(a - b);
}

}  // namespace

DecompositionReport verify_decomposition(const PolyhedralCurrent& t, const Transport& transport,
                                         std::uint64_t seed, int subset_samples, double tol) {
    DecompositionReport report;
    const double scale = std::max(1.0, mass(t));
    const double bound = tol * scale;
    auto check = [&](std::string name, double residual) {
        report.checks.push_back({std::move(name), residual <= bound, residual});
    };

    PolyhedralCurrent synth = synthesize(transport, t.space());
    double edge_gap = 0.0;
    for (const auto& e : difference(synth, t).edges()) edge_gap += e.weight;
    check("synthesis reproduces the current edge-wise", edge_gap);

    check("transport cost equals current mass (no cancellation)",
          std::abs(transport_cost(transport, *t.space()) - mass(t)));

    JordanPair parts = jordan(boundary(t));
    check("curve end points reproduce the positive boundary",
          measure_gap(transport.end_measure(), parts.positive));
    check("curve start points reproduce the negative boundary",
          measure_gap(transport.start_measure(), parts.negative));

    int non_arcs = 0;
    for (const auto& atom : transport.atoms()) {
        if (!atom.path.is_arc()) ++non_arcs;
    }
    report.checks.push_back({"every path is an arc", non_arcs == 0,
                             static_cast<double>(non_arcs)});

    double worst_excess = 0.0;
    bool all_sub = true;
    for (const auto& atom : transport.atoms()) {
        PolyhedralCurrent pc = path_current(atom.path, atom.weight, t.space());
        SubcurrentWitness w = is_subcurrent(pc, t, bound);
        if (!w.holds) {
            all_sub = false;
            worst_excess = std::numeric_limits<double>::infinity();
            break;
        }
        for (const auto& e : pc.edges()) {
            worst_excess = std::max(worst_excess, e.weight - t.signed_weight(e.tail, e.head));
        }
    }
    report.checks.push_back({"every atom is a subcurrent", all_sub && worst_excess <= bound,
                             std::max(0.0, worst_excess)});

    /* Restriction identity on random vertex subsets: the mass of the
     * restriction must split over the atoms.  Holds whenever synthesis is
     * cancellation-free, so it cross-checks (a) and (b) structurally. */
    std::vector<int> used;
    for (const auto& e : t.edges()) {
        used.push_back(e.tail);
        used.push_back(e.head);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::mt19937_64 rng(seed);
    double worst_restriction = 0.0;
    for (int s = 0; s < subset_samples; ++s) {
        std::vector<int> subset;
        for (int v : used) {
            if (rng() & 1u) subset.push_back(v);
        }
        double atom_masses = 0.0;
        for (const auto& atom : transport.atoms()) {
            atom_masses +=
                mass(restrict_to_vertices(path_current(atom.path, atom.weight, t.space()), subset));
        }
        const double direct = mass(restrict_to_vertices(t, subset));
        worst_restriction = std::max(worst_restriction, std::abs(direct - atom_masses));
    }
    check("restriction mass splits over atoms", worst_restriction);

    return report;
}

}  // namespace pmc
