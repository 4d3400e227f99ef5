#include "pmc/mincostflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace pmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/* Residual arc: even slots are the input arcs (cap unbounded, so residual
 * capacity is infinite), odd slots their reverses (capacity = flow pushed
 * on the partner). */
struct Residual {
    int head;
    int partner;  // index of the opposite residual arc
    double cost;
    double cap;  // kInf for forward arcs
};

}  // namespace

FlowSolution min_cost_flow(int node_count, std::span<const FlowArc> arcs,
                           std::span<const double> excess, double mass_tol) {
    if (static_cast<int>(excess.size()) != node_count) {
        throw ValidationError("min cost flow: excess vector size mismatch");
    }
    double balance = 0.0, scale = 0.0;
    for (double e : excess) {
        if (!std::isfinite(e)) throw ValidationError("min cost flow: non-finite excess");
        balance += e;
        scale += std::abs(e);
    }
    if (std::abs(balance) > mass_tol * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "min cost flow: supplies and demands do not balance (residue " << balance << ")";
        throw ValidationError(msg.str());
    }

    std::vector<Residual> res;
    res.reserve(arcs.size() * 2);
    std::vector<std::vector<int>> out(node_count);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const FlowArc& arc = arcs[a];
        if (arc.tail < 0 || arc.tail >= node_count || arc.head < 0 || arc.head >= node_count) {
            throw ValidationError("min cost flow: arc endpoint out of range");
        }
        if (!(arc.cost >= 0.0) || !std::isfinite(arc.cost)) {
            throw ValidationError("min cost flow: arc costs must be finite and nonnegative");
        }
        const int fwd = static_cast<int>(res.size());
        res.push_back({arc.head, fwd + 1, arc.cost, kInf});
        res.push_back({arc.tail, fwd, -arc.cost, 0.0});
        out[arc.tail].push_back(fwd);
        out[arc.head].push_back(fwd + 1);
    }

    std::vector<double> node_excess(excess.begin(), excess.end());
    std::vector<double> potential(node_count, 0.0);
    const double drop = mass_tol * std::max(1.0, scale);

    std::vector<double> dist(node_count);
    std::vector<int> parent_arc(node_count);
    using QItem = std::pair<double, int>;  // (distance, node); ties on node index

    while (true) {
        int source = -1;
        for (int v = 0; v < node_count; ++v) {
            if (node_excess[v] > drop) {
                source = v;
                break;
            }
        }
        if (source < 0) break;

        /* Dijkstra over reduced costs from every supplying node at once;
         * stops when the residual graph is exhausted. */
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(parent_arc.begin(), parent_arc.end(), -1);
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
        for (int v = 0; v < node_count; ++v) {
            if (node_excess[v] > drop) {
                dist[v] = 0.0;
                queue.push({0.0, v});
            }
        }
        while (!queue.empty()) {
            auto [d, v] = queue.top();
            queue.pop();
            if (d > dist[v]) continue;
            for (int idx : out[v]) {
                const Residual& r = res[idx];
                if (r.cap <= drop && !std::isinf(r.cap)) continue;
                /* Reduced costs are nonnegative up to roundoff; clamp the
                 * dust so Dijkstra's invariant survives. */
                const double rc = std::max(0.0, r.cost + potential[v] - potential[r.head]);
                const double nd = d + rc;
                if (nd < dist[r.head]) {
                    dist[r.head] = nd;
                    parent_arc[r.head] = idx;
                    queue.push({nd, r.head});
                }
            }
        }

        int sink = -1;
        double best = kInf;
        for (int v = 0; v < node_count; ++v) {
            if (node_excess[v] < -drop && dist[v] < best) {
                best = dist[v];
                sink = v;
            }
        }
        if (sink < 0) {
            throw ValidationError("min cost flow: demand unreachable from remaining supply");
        }

        for (int v = 0; v < node_count; ++v) {
            if (dist[v] < kInf) potential[v] += dist[v];
        }

        /* Walk back to find the bottleneck, then augment. */
        double amount = -node_excess[sink];
        int v = sink;
        while (parent_arc[v] >= 0) {
            const Residual& r = res[parent_arc[v]];
            if (!std::isinf(r.cap)) amount = std::min(amount, r.cap);
            v = res[r.partner].head;
        }
        amount = std::min(amount, node_excess[v]);

        node_excess[v] -= amount;
        node_excess[sink] += amount;
        v = sink;
        while (parent_arc[v] >= 0) {
            Residual& r = res[parent_arc[v]];
            Residual& back = res[r.partner];
            if (!std::isinf(r.cap)) r.cap -= amount;
            if (!std::isinf(back.cap)) back.cap += amount;
            v = back.head;
        }
    }

    FlowSolution solution;
    solution.flow.resize(arcs.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        /* Flow on a forward arc equals the capacity accumulated on its
         * reverse. */
        solution.flow[a] = res[2 * a + 1].cap;
        solution.cost += solution.flow[a] * arcs[a].cost;
    }
    solution.potential = std::move(potential);
    return solution;
}

}  // namespace pmc
