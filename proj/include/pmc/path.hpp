#pragma once

#include <vector>

namespace pmc {

class Space;

/* A polygonal curve through a space, stored as the vertex index sequence.
 *
 * Invariants: at least one vertex; consecutive vertices distinct.  A path
 * with a single vertex is the constant-curve marker (zero length); it shows
 * up when a loop excision consumes an entire curve and when a transport plan
 * keeps mass in place.
 */
struct Path {
    std::vector<int> vertices;

    Path() = default;
    explicit Path(std::vector<int> v);

    int size() const { return static_cast<int>(vertices.size()); }
    bool is_constant() const { return vertices.size() == 1; }
    /* True when no vertex repeats (injective curve). */
    bool is_arc() const;

    bool operator==(const Path&) const = default;
};

/* Sum of step distances d(v_i, v_{i+1}); zero for a constant path. */
double parametric_length(const Path& path, const Space& space);

}  // namespace pmc
